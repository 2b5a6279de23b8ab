//! Simulation configuration and its validation.
//!
//! `SimConfig` is the single source of truth for a run. The JSON config file
//! accepted by the CLI mirrors this struct field for field (kebab-case tags,
//! unknown keys rejected); every field has a default, so `{}` is a valid
//! config meaning "the default desk-scale scenario".

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Position, RadioEnergyModel};
use crate::topology::TopologySpec;

/// Head-selection scheme under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Scheme {
    /// k-NN frequency candidate selection plus combined-rating election.
    #[cfg_attr(feature = "serde", serde(rename = "ktheorem"))]
    KTheorem,
    /// Uniform random rotation among members not yet served this epoch.
    #[cfg_attr(feature = "serde", serde(rename = "random-baseline"))]
    RandomBaseline,
}

/// How node positions are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TopologyMode {
    /// Every node uniform over the field; clusters are index blocks, so a
    /// cluster's members are scattered across the whole field.
    Uniform,
    /// Each cluster drawn around its own centre (uneven spatial density).
    GaussianClustered,
}

/// Where the coordinator node sits.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CnPlacement {
    /// Centroid of all generated node positions.
    Centroid,
    Custom { x: f64, y: f64 },
}

/// Node mobility model.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields))]
pub enum MobilitySpec {
    /// Nodes never move.
    Static,
    /// Random waypoint: pick a uniform target, travel at a speed drawn from
    /// (0, v_max] metres per round, pause, repeat.
    RandomWaypoint { v_max: f64, pause: u32 },
}

impl MobilitySpec {
    /// Speed bound used to normalise the mobility degree. Static nodes
    /// never move, so any positive bound works; 1.0 keeps the degree 0/0-free.
    pub fn v_max(&self) -> f64 {
        match *self {
            MobilitySpec::Static => 1.0,
            MobilitySpec::RandomWaypoint { v_max, .. } => v_max,
        }
    }
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SimConfig {
    /// Field width, metres.
    pub field_width: f64,
    /// Field height, metres.
    pub field_height: f64,
    pub cluster_count: usize,
    /// One entry per cluster; lengths other than `cluster_count` are
    /// rejected. Uneven entries give uneven clusters.
    pub nodes_per_cluster: Vec<usize>,
    pub topology: TopologyMode,
    pub cn_position: CnPlacement,
    /// Cluster-head ratio r in (0, 0.5]; k_i = round_half_up(n_i * r).
    pub r: f64,
    /// Battery capacity per node, joules.
    pub initial_energy: f64,
    pub energy: RadioEnergyModel,
    pub weights: RatingWeights,
    pub mobility: MobilitySpec,
    /// Poisson failure rate lambda per round, shared by all nodes.
    pub failure_rate: f64,
    /// Number of past rounds of displacement feeding the mobility degree.
    pub mobility_window: usize,
    pub max_rounds: u32,
    /// Master seed. Subsystems (topology, mobility, baseline election) use
    /// fixed derived streams; replication i of a comparison uses seed + i.
    pub seed: u64,
    pub scheme: Scheme,
}

/// Weights of the combined rating, a convex combination over the four
/// rating components. Must be non-negative and sum to 1 (within 1e-9).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct RatingWeights {
    pub w_energy: f64,
    pub w_distance: f64,
    pub w_reliability: f64,
    pub w_mobility: f64,
}

impl Default for RatingWeights {
    fn default() -> Self {
        RatingWeights {
            w_energy: 0.4,
            w_distance: 0.3,
            w_reliability: 0.2,
            w_mobility: 0.1,
        }
    }
}

impl RatingWeights {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn validate(&self) -> Result<(), ConfigError> {
        let ws = [self.w_energy, self.w_distance, self.w_reliability, self.w_mobility];
        if ws.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(ConfigError::InvalidWeights);
        }
        let sum: f64 = ws.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(ConfigError::InvalidWeights);
        }
        Ok(())
    }
}

impl Default for SimConfig {
    /// The default desk-scale scenario: 100 nodes in 5 clusters of 20 on a
    /// 100 m x 100 m field, CN at the centroid, r = 0.15, static nodes.
    fn default() -> Self {
        SimConfig {
            field_width: 100.0,
            field_height: 100.0,
            cluster_count: 5,
            nodes_per_cluster: vec![20; 5],
            topology: TopologyMode::Uniform,
            cn_position: CnPlacement::Centroid,
            r: 0.15,
            initial_energy: 0.2,
            energy: RadioEnergyModel::default(),
            weights: RatingWeights::default(),
            mobility: MobilitySpec::Static,
            failure_rate: 0.001,
            mobility_window: 10,
            max_rounds: 400,
            seed: 42,
            scheme: Scheme::KTheorem,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.field_width > 0.0 && self.field_width.is_finite())
            || !(self.field_height > 0.0 && self.field_height.is_finite())
        {
            return Err(ConfigError::InvalidField);
        }
        if self.cluster_count == 0 {
            return Err(ConfigError::NoClusters);
        }
        if self.nodes_per_cluster.len() != self.cluster_count {
            return Err(ConfigError::ClusterSizeMismatch {
                clusters: self.cluster_count,
                entries: self.nodes_per_cluster.len(),
            });
        }
        if self.nodes_per_cluster.iter().any(|&n| n == 0) {
            return Err(ConfigError::EmptyCluster);
        }
        if !(self.r > 0.0 && self.r <= 0.5) {
            return Err(ConfigError::RatioOutOfRange(self.r));
        }
        if !(self.initial_energy > 0.0 && self.initial_energy.is_finite()) {
            return Err(ConfigError::InvalidEnergy);
        }
        let e = &self.energy;
        if !(e.e_elec > 0.0) || !(e.eps_amp >= 0.0) || !(e.e_agg >= 0.0) {
            return Err(ConfigError::InvalidEnergy);
        }
        if e.packet_bits == 0 || e.ctrl_bits == 0 {
            return Err(ConfigError::InvalidEnergy);
        }
        self.weights.validate()?;
        if let MobilitySpec::RandomWaypoint { v_max, .. } = self.mobility {
            if !(v_max > 0.0 && v_max.is_finite()) {
                return Err(ConfigError::InvalidMobility);
            }
        }
        if let CnPlacement::Custom { x, y } = self.cn_position {
            if !x.is_finite() || !y.is_finite() {
                return Err(ConfigError::InvalidField);
            }
        }
        if !(self.failure_rate >= 0.0 && self.failure_rate.is_finite()) {
            return Err(ConfigError::InvalidFailureRate);
        }
        Ok(())
    }

    pub fn total_nodes(&self) -> usize {
        self.nodes_per_cluster.iter().sum()
    }

    /// The topology-generation slice of this config.
    pub fn topology_spec(&self) -> TopologySpec {
        TopologySpec {
            mode: self.topology,
            field_width: self.field_width,
            field_height: self.field_height,
            cluster_count: self.cluster_count,
            nodes_per_cluster: self.nodes_per_cluster.clone(),
            cn_position: self.cn_position,
        }
    }

    /// Diagonal of the field, the largest possible node-CN distance; the
    /// distance score normalises against this.
    pub fn field_diagonal(&self) -> f64 {
        crate::math::sqrt(self.field_width * self.field_width + self.field_height * self.field_height)
    }

    /// Length of the baseline rotation epoch, ceil(1/r) rounds.
    pub fn epoch_len(&self) -> u32 {
        let inv = 1.0 / self.r;
        let f = crate::math::floor(inv);
        let mut n = f as u32;
        if inv > f {
            n += 1;
        }
        n.max(1)
    }

    pub fn field_contains(&self, p: &Position) -> bool {
        p.x >= 0.0 && p.x <= self.field_width && p.y >= 0.0 && p.y <= self.field_height
    }
}

/// Reasons a configuration is rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    InvalidField,
    NoClusters,
    ClusterSizeMismatch { clusters: usize, entries: usize },
    EmptyCluster,
    /// r must lie in (0, 0.5].
    RatioOutOfRange(f64),
    InvalidEnergy,
    InvalidWeights,
    InvalidMobility,
    InvalidFailureRate,
    /// Free-form error for harness-level misuse (e.g. zero replications).
    Other(String),
}

impl core::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConfigError::InvalidField => write!(f, "field dimensions and CN position must be positive and finite"),
            ConfigError::NoClusters => write!(f, "cluster_count must be at least 1"),
            ConfigError::ClusterSizeMismatch { clusters, entries } => write!(
                f,
                "nodes_per_cluster has {entries} entries but cluster_count is {clusters}"
            ),
            ConfigError::EmptyCluster => write!(f, "every cluster needs at least one node"),
            ConfigError::RatioOutOfRange(r) => {
                write!(f, "cluster-head ratio r = {r} is outside (0, 0.5]")
            }
            ConfigError::InvalidEnergy => write!(f, "energy parameters must be positive (bit sizes non-zero)"),
            ConfigError::InvalidWeights => {
                write!(f, "rating weights must be non-negative and sum to 1 within 1e-9")
            }
            ConfigError::InvalidMobility => write!(f, "random-waypoint v_max must be positive and finite"),
            ConfigError::InvalidFailureRate => write!(f, "failure rate must be non-negative and finite"),
            ConfigError::Other(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}
