//! Cluster-head candidate selection from k-nearest-neighbour frequency
//! voting.
//!
//! For a cluster of n alive nodes the CN derives k = round_half_up(n * r),
//! collects each node's k nearest co-members under an energy-aware
//! effective distance, counts how often each node occurs across the lists
//! (counting the node's own list membership as one occurrence), and keeps
//! every node whose frequency reaches a threshold derived from the mean
//! frequency. The resulting candidate set feeds the rating-based election.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::config::ConfigError;
use crate::math;
use crate::model::{NodeId, Position};

/// The k nearest co-members of `owner`, nearest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborList {
    pub owner: NodeId,
    pub neighbors: Vec<NodeId>,
}

/// All neighbour lists of a cluster, owners in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnnLists {
    pub lists: Vec<NeighborList>,
    /// True when fewer than k+1 nodes were alive, so lists were cut short.
    pub truncated: bool,
}

/// Outcome of candidate selection for one cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSelection {
    pub k: u32,
    pub frequencies: BTreeMap<NodeId, u32>,
    pub threshold: u32,
    /// Never empty: when no frequency reaches the threshold the top-k nodes
    /// by frequency (ties toward lower id) are kept instead.
    pub candidates: BTreeSet<NodeId>,
}

/// Per-cluster k: round_half_up(n * r) clamped to [1, n - 1].
///
/// A single-node cluster has no peers to rank, so k degenerates to 0 and
/// the sole member serves by default.
pub fn cluster_k(n: usize, r: f64) -> Result<u32, ConfigError> {
    if !(r > 0.0 && r <= 0.5) {
        return Err(ConfigError::RatioOutOfRange(r));
    }
    if n <= 1 {
        return Ok(0);
    }
    let k = math::round_half_up(n as f64 * r);
    Ok((k.max(1) as u32).min(n as u32 - 1))
}

/// Energy-aware effective distance between two co-members, in square
/// metres: the direct d^2 cost, or the cheapest one-relay d^2 sum through
/// another alive member if that is lower. First-order radio energy grows
/// with d^2, so a detour through a midpoint can genuinely be cheaper.
///
/// `members` holds the alive members of the cluster including `u` and `v`.
pub fn effective_distance(u: NodeId, v: NodeId, members: &[(NodeId, Position)]) -> f64 {
    let pos = |id: NodeId| {
        members
            .iter()
            .find(|(m, _)| *m == id)
            .map(|(_, p)| *p)
            .expect("node must be a member of the cluster")
    };
    let pu = pos(u);
    let pv = pos(v);
    let direct = pu.distance_sq(&pv);
    let mut best = direct;
    for (w, pw) in members {
        if *w == u || *w == v {
            continue;
        }
        let via = pu.distance_sq(pw) + pw.distance_sq(&pv);
        if via < best {
            best = via;
        }
    }
    best
}

/// The k nearest co-members of every alive member, by effective distance,
/// ties toward the lower id. Owners come out in ascending id order and
/// each list is sorted nearest first, so the result does not depend on the
/// order of `members`.
pub fn knn_lists(members: &[(NodeId, Position)], k: u32) -> KnnLists {
    assert!(k >= 1, "knn lists need k >= 1; single-node clusters skip selection");
    let mut sorted: Vec<(NodeId, Position)> = members.to_vec();
    sorted.sort_by_key(|(id, _)| *id);

    let mut lists = Vec::with_capacity(sorted.len());
    let mut truncated = false;
    for (owner, _) in &sorted {
        let mut ranked: Vec<(f64, NodeId)> = sorted
            .iter()
            .filter(|(id, _)| id != owner)
            .map(|(id, _)| (effective_distance(*owner, *id, &sorted), *id))
            .collect();
        ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("distances are finite").then(a.1.cmp(&b.1)));
        if ranked.len() < k as usize {
            truncated = true;
        }
        let neighbors = ranked.into_iter().take(k as usize).map(|(_, id)| id).collect();
        lists.push(NeighborList { owner: *owner, neighbors });
    }
    KnnLists { lists, truncated }
}

/// Frequency of occurrence of every node: 1 for the node itself plus one
/// per appearance in another node's neighbour list.
pub fn frequency_of_occurrence(lists: &[NeighborList]) -> BTreeMap<NodeId, u32> {
    let mut freq: BTreeMap<NodeId, u32> = lists.iter().map(|l| (l.owner, 1)).collect();
    for list in lists {
        for n in &list.neighbors {
            *freq.entry(*n).or_insert(1) += 1;
        }
    }
    freq
}

/// Selection threshold K = round_half_up(mean frequency) + 1.
pub fn selection_threshold(frequencies: &BTreeMap<NodeId, u32>) -> u32 {
    assert!(!frequencies.is_empty(), "threshold of an empty frequency map");
    let sum: u64 = frequencies.values().map(|&f| f as u64).sum();
    let mean = sum as f64 / frequencies.len() as f64;
    math::round_half_up(mean) as u32 + 1
}

/// Candidates: every node whose frequency reaches `threshold`. When none
/// does, fall back to the k most frequent nodes (ties toward lower id) so
/// the set is never empty.
pub fn candidate_set(
    frequencies: &BTreeMap<NodeId, u32>,
    threshold: u32,
    k: u32,
) -> BTreeSet<NodeId> {
    debug_assert!(k >= 1, "candidate selection needs k >= 1");
    let primary: BTreeSet<NodeId> = frequencies
        .iter()
        .filter(|(_, &f)| f >= threshold)
        .map(|(&id, _)| id)
        .collect();
    if !primary.is_empty() {
        return primary;
    }
    let mut ranked: Vec<(NodeId, u32)> = frequencies.iter().map(|(&id, &f)| (id, f)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(k as usize).map(|(id, _)| id).collect()
}

/// Run the whole pipeline for one cluster of alive members.
pub fn select(members: &[(NodeId, Position)], k: u32) -> KSelection {
    let knn = knn_lists(members, k);
    let frequencies = frequency_of_occurrence(&knn.lists);
    let threshold = selection_threshold(&frequencies);
    let candidates = candidate_set(&frequencies, threshold, k);
    KSelection { k, frequencies, threshold, candidates }
}

/// The bundled ten-node worked example: the neighbour lists (k = 3) that the
/// selection arithmetic is demonstrated on. Frequencies come out as
/// (3,4,5,6,4,7,2,2,4,3), the threshold as 5, and the candidate set as
/// {3, 4, 6}.
pub fn reference_lists() -> Vec<NeighborList> {
    const LISTS: [(u32, [u32; 3]); 10] = [
        (1, [2, 3, 4]),
        (2, [1, 4, 5]),
        (3, [1, 4, 6]),
        (4, [2, 3, 6]),
        (5, [2, 4, 6]),
        (6, [3, 4, 5]),
        (7, [3, 9, 10]),
        (8, [5, 6, 9]),
        (9, [6, 8, 10]),
        (10, [6, 7, 9]),
    ];
    LISTS
        .iter()
        .map(|(owner, ns)| NeighborList {
            owner: NodeId(*owner),
            neighbors: ns.iter().map(|&n| NodeId(n)).collect(),
        })
        .collect()
}

/// A placement of ten nodes whose 3-NN structure under the effective
/// distance reproduces `reference_lists` exactly (as sets per owner; the
/// within-list order differs since lists are emitted nearest first). Found
/// by randomized search; the orderings hold with a worst margin of about
/// 2.1 m^2, far above float noise. Relays shorten 56 of the ordered pairs,
/// so the placement exercises the one-relay branch of the metric.
pub fn reference_placement() -> Vec<(NodeId, Position)> {
    const COORDS: [(u32, f64, f64); 10] = [
        (1, 1.00, 19.00),
        (2, 6.35, 23.54),
        (3, 4.10, 14.09),
        (4, 8.99, 17.54),
        (5, 11.77, 24.45),
        (6, 11.89, 17.64),
        (7, 13.69, 1.00),
        (8, 24.57, 22.30),
        (9, 21.02, 11.94),
        (10, 26.90, 3.65),
    ];
    COORDS
        .iter()
        .map(|&(id, x, y)| (NodeId(id), Position::new(x, y)))
        .collect()
}
