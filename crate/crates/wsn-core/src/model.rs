//! Domain types: nodes, clusters, the coordinator, and the radio energy
//! model.

use alloc::collections::{BTreeSet, VecDeque};

use crate::math;

/// Identifier of a sensor node, unique within a simulation.
///
/// Engine-generated topologies use dense ids `0..n`; hand-built fixtures may
/// use any ids. Ties everywhere in the protocol break toward the lower id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl core::fmt::Display for NodeId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a cluster within the simulation.
pub type ClusterId = usize;

/// A point on the sensor field, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    /// Both coordinates must be finite.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "position must be finite");
        Position { x, y }
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Position) -> f64 {
        math::sqrt(self.distance_sq(other))
    }

    /// Squared Euclidean distance; the radio amplifier cost is proportional
    /// to this, so most of the protocol works in d^2 directly.
    pub fn distance_sq(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A sensor node with its battery and head-rotation bookkeeping.
#[derive(Debug, Clone)]
pub struct SensorNode {
    pub id: NodeId,
    pub position: Position,
    /// Battery capacity at deployment, joules.
    pub initial_energy: f64,
    /// Remaining battery, joules. The node is alive iff this is > 0.
    pub residual_energy: f64,
    /// Poisson failure rate lambda, failures per round (rating input only;
    /// nodes die by energy depletion, not by sampled failures).
    pub failure_rate: f64,
    /// Consecutive rounds served as cluster head, saturating at 2.
    pub consecutive_ch_terms: u8,
    pub cluster: ClusterId,
    /// Previous positions, newest last, capped at the mobility window W.
    /// Together with `position` this yields up to W per-round displacement
    /// samples for the mobility degree.
    pub position_history: VecDeque<Position>,
}

impl SensorNode {
    pub fn new(id: NodeId, position: Position, initial_energy: f64, failure_rate: f64, cluster: ClusterId) -> Self {
        assert!(initial_energy > 0.0, "initial energy must be positive");
        SensorNode {
            id,
            position,
            initial_energy,
            residual_energy: initial_energy,
            failure_rate,
            consecutive_ch_terms: 0,
            cluster,
            position_history: VecDeque::new(),
        }
    }

    #[inline]
    pub fn is_alive(&self) -> bool {
        self.residual_energy > 0.0
    }

    /// Drain `amount` joules, applying the debit floor: a debit that would
    /// push the battery below zero drains exactly what is left, leaving the
    /// residual at exactly 0.0 (dead). Returns the amount actually drained,
    /// which is what belongs in the energy ledger.
    pub fn debit(&mut self, amount: f64) -> f64 {
        debug_assert!(amount >= 0.0);
        let actual = if amount >= self.residual_energy {
            self.residual_energy
        } else {
            amount
        };
        self.residual_energy -= actual;
        actual
    }

    /// Record the position held before a movement step, keeping at most
    /// `window` entries.
    pub fn push_history(&mut self, previous: Position, window: usize) {
        if window == 0 {
            return;
        }
        if self.position_history.len() == window {
            self.position_history.pop_front();
        }
        self.position_history.push_back(previous);
    }
}

/// A cluster: fixed membership, current head, and current candidate count k.
#[derive(Debug, Clone)]
pub struct Cluster {
    pub id: ClusterId,
    pub members: BTreeSet<NodeId>,
    pub head: Option<NodeId>,
    /// k value used at the most recent (re)selection.
    pub k: u32,
}

impl Cluster {
    pub fn new(id: ClusterId, members: BTreeSet<NodeId>) -> Self {
        assert!(!members.is_empty(), "cluster must have at least one member");
        Cluster { id, members, head: None, k: 0 }
    }
}

/// The coordinator node: a resource-rich relay between cluster heads and
/// the base station. Its energy is not tracked and it never dies.
#[derive(Debug, Clone, Copy)]
pub struct CoordinatorNode {
    pub position: Position,
}

impl CoordinatorNode {
    /// Modeling assumption: the CN is reachable by every node in the field.
    #[inline]
    pub fn reachable(&self) -> bool {
        true
    }
}

/// First-order radio model. Transmitting costs electronics plus an
/// amplifier term proportional to d^2; receiving costs electronics only;
/// aggregation costs a fixed amount per bit per received signal.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct RadioEnergyModel {
    /// Electronics energy, joules per bit.
    pub e_elec: f64,
    /// Amplifier energy, joules per bit per square metre.
    pub eps_amp: f64,
    /// Aggregation energy, joules per bit per received signal.
    pub e_agg: f64,
    /// Payload size of a data packet, bits.
    pub packet_bits: u32,
    /// Size of a control message, bits.
    pub ctrl_bits: u32,
}

impl Default for RadioEnergyModel {
    fn default() -> Self {
        RadioEnergyModel {
            e_elec: 50e-9,
            eps_amp: 100e-12,
            e_agg: 5e-9,
            packet_bits: 2000,
            ctrl_bits: 200,
        }
    }
}

impl RadioEnergyModel {
    /// Energy to transmit `bits` over `distance` metres.
    pub fn tx_energy(&self, bits: u32, distance: f64) -> f64 {
        assert!(bits > 0, "transmission of zero bits is rejected");
        assert!(
            distance >= 0.0 && distance.is_finite(),
            "negative or non-finite distance is rejected"
        );
        bits as f64 * (self.e_elec + self.eps_amp * distance * distance)
    }

    /// Energy to receive `bits`.
    pub fn rx_energy(&self, bits: u32) -> f64 {
        assert!(bits > 0, "reception of zero bits is rejected");
        bits as f64 * self.e_elec
    }

    /// Energy to aggregate `signals` received packets of `bits` each.
    pub fn aggregation_energy(&self, bits: u32, signals: u32) -> f64 {
        self.e_agg * bits as f64 * signals as f64
    }
}
