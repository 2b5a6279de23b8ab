//! Combined rating of candidate nodes and head election.
//!
//! Each candidate gets a weighted score in [0, 1] built from four
//! normalized factors: residual energy, proximity to the coordinator,
//! reliability decaying with uptime, and mobility. The cluster head is the
//! highest-rated candidate that has not reached the consecutive-term
//! limit, with ties broken toward the lower node id.

use alloc::collections::BTreeSet;

use crate::config::RatingWeights;
use crate::math;
use crate::model::{NodeId, Position};

/// A node may serve at most this many consecutive rounds as head before it
/// is forced to hand over.
pub const MAX_CONSECUTIVE_TERMS: u8 = 2;

/// Energy factor: residual over initial, in [0, 1] for a healthy node.
pub fn energy_score(residual: f64, initial: f64) -> f64 {
    assert!(initial > 0.0, "initial energy must be positive");
    (residual / initial).clamp(0.0, 1.0)
}

/// Distance factor: 1 at the coordinator, falling linearly to 0 at one
/// field diagonal away, clamped to [0, 1].
pub fn distance_score(node: &Position, cn: &Position, field_diagonal: f64) -> f64 {
    assert!(field_diagonal > 0.0, "field diagonal must be positive");
    (1.0 - node.distance(cn) / field_diagonal).clamp(0.0, 1.0)
}

/// Reliability factor: exp(-lambda * t) where t is the number of rounds
/// already elapsed (round 1 gives t = 0, so every node starts at 1).
pub fn reliability(failure_rate: f64, rounds_elapsed: u32) -> f64 {
    assert!(failure_rate >= 0.0, "failure rate must be non-negative");
    math::exp(-failure_rate * rounds_elapsed as f64)
}

/// Mobility degree: the node's mean per-round displacement over its
/// recorded history, normalized by the maximum speed and clamped to
/// [0, 1]. A static node scores 0, a node moving at full speed scores 1.
///
/// `history` holds the previous positions oldest first; `current` is where
/// the node is now. With fewer than one previous position there is no
/// displacement evidence and the degree is 0.
pub fn mobility_degree(history: &[Position], current: &Position, v_max: f64) -> f64 {
    assert!(v_max > 0.0, "v_max must be positive");
    if history.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for pair in history.windows(2) {
        total += pair[0].distance(&pair[1]);
    }
    total += history[history.len() - 1].distance(current);
    let mean = total / history.len() as f64;
    (mean / v_max).clamp(0.0, 1.0)
}

/// Inputs to one candidate's combined rating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatingFactors {
    pub energy: f64,
    pub distance: f64,
    pub reliability: f64,
    pub mobility: f64,
}

/// Combined rating: w_e * energy + w_d * distance + w_r * reliability
/// + w_m * (1 - mobility). Higher is better; mobility penalizes.
pub fn combined_rating(f: &RatingFactors, w: &RatingWeights) -> f64 {
    w.w_energy * f.energy
        + w.w_distance * f.distance
        + w.w_reliability * f.reliability
        + w.w_mobility * (1.0 - f.mobility)
}

/// Pick the head: the candidate with the highest rating among those not in
/// `blocked` (nodes at the consecutive-term limit), ties toward the lower
/// id. Returns None when every candidate is blocked or the slice is empty.
pub fn elect_head(ratings: &[(NodeId, f64)], blocked: &BTreeSet<NodeId>) -> Option<NodeId> {
    let mut best: Option<(NodeId, f64)> = None;
    for &(id, rating) in ratings {
        if blocked.contains(&id) {
            continue;
        }
        best = match best {
            None => Some((id, rating)),
            Some((bid, br)) => {
                if rating > br || (rating == br && id < bid) {
                    Some((id, rating))
                } else {
                    Some((bid, br))
                }
            }
        };
    }
    best.map(|(id, _)| id)
}
