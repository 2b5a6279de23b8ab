//! Per-round metrics and whole-run results.

use alloc::format;
use alloc::vec::Vec;

use crate::model::NodeId;

/// Snapshot of one simulated round, taken after the round completed.
///
/// The two float fields are quantized to 9 significant digits at
/// construction, matching the CSV emitter's precision, so a metrics row
/// survives an emit/parse round trip bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundMetrics {
    /// 1-based round number.
    pub round: u32,
    /// Nodes alive at the end of the round.
    pub alive: u32,
    /// Sum of residual energies over all nodes, joules.
    pub total_residual_j: f64,
    /// Population variance of per-node residual energies (dead nodes count
    /// as 0), joules^2.
    pub residual_variance: f64,
    /// Data transmissions this round (member uplinks and head-to-CN).
    pub msgs_data: u64,
    /// Control transmissions this round (setup steps, confirmations,
    /// maintenance beacons).
    pub msgs_ctrl: u64,
    /// Clusters that ran a head (re)selection this round.
    pub reselections: u32,
    /// Serving head per cluster, in cluster order; None for extinct
    /// clusters.
    pub ch_ids: Vec<Option<NodeId>>,
}

impl RoundMetrics {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        round: u32,
        alive: u32,
        total_residual_j: f64,
        residual_variance: f64,
        msgs_data: u64,
        msgs_ctrl: u64,
        reselections: u32,
        ch_ids: Vec<Option<NodeId>>,
    ) -> Self {
        RoundMetrics {
            round,
            alive,
            total_residual_j: quantize_sig9(total_residual_j),
            residual_variance: quantize_sig9(residual_variance),
            msgs_data,
            msgs_ctrl,
            reselections,
            ch_ids,
        }
    }
}

/// Render a float with 9 significant digits, the precision used by the
/// metrics CSV.
pub fn format_sig9(x: f64) -> alloc::string::String {
    format!("{x:.8e}")
}

/// Round `x` to the value its 9-significant-digit rendering parses back to,
/// making the rendering lossless for the stored value.
pub fn quantize_sig9(x: f64) -> f64 {
    debug_assert!(x.is_finite());
    format_sig9(x).parse().expect("formatted float always parses")
}

/// Outcome of a full run of one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub metrics: Vec<RoundMetrics>,
    /// Round during which the first node died; None if all survived.
    pub first_node_death_round: Option<u32>,
    /// Round during which the last node died (network extinction); None if
    /// any node survived to the end.
    pub last_node_death_round: Option<u32>,
    /// All transmissions over the run, data plus control.
    pub total_messages: u64,
    /// Residual energy per node at the end, indexed by node id.
    pub final_residuals: Vec<f64>,
}
