//! Harness around the simulator core: JSON configuration files, the
//! per-round metrics CSV format, and comparison reports.

pub mod config_file;
pub mod csv;
pub mod report;
