//! Loading simulation configurations from JSON files.
//!
//! The file mirrors `SimConfig` field for field. Every field has a
//! default, so `{}` is a complete configuration (the default desk-scale
//! scenario); unknown keys are rejected to catch typos.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use wsn_core::SimConfig;

/// Read, deserialize, and validate a configuration file.
pub fn load_config(path: &Path) -> Result<SimConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in config file {}", path.display()))
}

/// Deserialize and validate a configuration from a JSON string.
pub fn parse_config(text: &str) -> Result<SimConfig> {
    let cfg: SimConfig = serde_json::from_str(text).context("malformed configuration")?;
    cfg.validate().context("invalid configuration")?;
    Ok(cfg)
}
