//! Deterministic core of a clustered wireless-sensor-network lifetime
//! simulator.
//!
//! A homogeneous sensor field is partitioned into clusters that report to a
//! resource-rich coordinator node (CN). Each round a cluster head (CH)
//! collects its members' data over TDMA slots, aggregates, and uplinks to
//! the CN. Two head-selection schemes are implemented:
//!
//! * `ktheorem` - the CN derives a per-cluster candidate set from k-nearest
//!   neighbour frequency-of-occurrence voting and elects the candidate with
//!   the highest combined rating (energy, CN proximity, reliability, low
//!   mobility),
//! * `random-baseline` - uniform random rotation among members that have not
//!   served in the current epoch.
//!
//! Everything in this crate is pure, seeded computation: collections with
//! deterministic iteration order, one ChaCha stream per subsystem, and an
//! energy ledger that records every debit. The crate is `no_std`-compatible
//! (allocation required); the default `std` feature only selects the float
//! intrinsics, with `libm` used otherwise.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod config;
pub mod engine;
pub mod ktheorem;
pub mod math;
pub mod metrics;
pub mod mobility;
pub mod model;
pub mod rating;
pub mod runner;
pub mod topology;

pub use config::{CnPlacement, ConfigError, MobilitySpec, Scheme, SimConfig, TopologyMode};
pub use engine::{Engine, Phase, ReselectionDecision, RoundReport};
pub use metrics::{RoundMetrics, RunResult};
pub use model::{NodeId, Position};
