//! The round-driven protocol engine.
//!
//! Every round runs three phases:
//!
//! * **A — movement and bookkeeping.** Positions advance (all nodes, even
//!   dead ones, so RNG streams stay aligned across schemes) and a head that
//!   continues from the previous round has its consecutive-term counter
//!   bumped.
//! * **B — setup or maintenance.** Clusters flagged by the previous round's
//!   decision re-run head selection (the whole network's round is then a
//!   `Setup` round). When no cluster is flagged the round is a
//!   `Maintenance` round: each alive node just receives one control beacon.
//! * **Steady state.** Members upload one data packet each in TDMA order,
//!   the head aggregates what actually arrived and uplinks one packet to
//!   the CN.
//!
//! At the end of the round the CN decides per cluster whether the head
//! continues, is reselected, or is forcibly replaced (dead or at the
//! consecutive-term limit); flags drive the next round's phase B.
//!
//! Message accounting is attempt-based: every transmission started by a
//! node that is alive at that instant counts, even if the battery empties
//! mid-transmission; delivery (and the receiver's rx debit) happens only
//! when the sender could pay the full cost and the receiver is alive.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, Scheme, SimConfig};
use crate::ktheorem;
use crate::math;
use crate::metrics::RoundMetrics;
use crate::mobility::MobilityModel;
use crate::model::{Cluster, ClusterId, CoordinatorNode, NodeId, Position, SensorNode};
use crate::rating::{self, RatingFactors, MAX_CONSECUTIVE_TERMS};
use crate::topology::{generate_topology, Topology};

/// What phase B of a round consisted of, network-wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// At least one cluster re-ran head selection.
    Setup,
    /// No cluster was flagged; alive nodes only received a beacon.
    Maintenance,
}

/// End-of-round verdict for one cluster's head.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReselectionDecision {
    /// Head keeps serving next round.
    Continue,
    /// Head is healthy but the cluster can afford a fresh election.
    Reselect,
    /// Head is dead or has served the maximum consecutive terms.
    ForcedReselect,
}

/// End-of-round head verdict. Checks run in a fixed order: death and the
/// term limit force a reselection; a head holding at least twice the
/// energy it just spent continues; otherwise the cluster reselects when it
/// still has more than k alive members (enough to make an election
/// worthwhile) and rides out the incumbent when it does not.
pub fn reselection_decision(
    head_alive: bool,
    residual: f64,
    spent_this_round: f64,
    terms: u8,
    cluster_alive: u32,
    k: u32,
) -> ReselectionDecision {
    if !head_alive {
        return ReselectionDecision::ForcedReselect;
    }
    if terms >= MAX_CONSECUTIVE_TERMS {
        return ReselectionDecision::ForcedReselect;
    }
    if residual >= 2.0 * spent_this_round {
        return ReselectionDecision::Continue;
    }
    if cluster_alive >= k + 1 {
        return ReselectionDecision::Reselect;
    }
    ReselectionDecision::Continue
}

/// Why a node was debited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DebitKind {
    ControlTx,
    ControlRx,
    DataTx,
    DataRx,
    Aggregation,
    /// Beacon reception in a maintenance round.
    Maintenance,
}

/// One entry of the energy ledger: the amount actually drained (after the
/// zero floor), so replaying a node's entries in order reproduces its
/// residual bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebitEvent {
    pub round: u32,
    pub node: NodeId,
    pub amount: f64,
    pub kind: DebitKind,
}

/// Trace of one cluster's head (re)selection, with per-step message counts
/// so the control-message arithmetic can be audited from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionAudit {
    pub cluster: ClusterId,
    /// Alive members when the cluster entered setup.
    pub alive_at_entry: u32,
    /// k used for the neighbour lists (0 on the single-member path).
    pub k: u32,
    pub candidates: BTreeSet<NodeId>,
    /// CN broadcasts opening the selection (1; the baseline scheme books
    /// its fixed 2 per-cluster rotation messages here).
    pub broadcast_msgs: u64,
    /// Member status uplinks (one per member alive at entry).
    pub info_msgs: u64,
    /// CN-to-candidate rating requests (one per candidate).
    pub request_msgs: u64,
    /// Candidate rating replies (one per candidate still alive).
    pub reply_msgs: u64,
    /// Head confirmation broadcast (1 when a head was elected).
    pub confirm_msgs: u64,
    /// Members that died while this cluster's setup ran.
    pub setup_deaths: u32,
    pub elected: Option<NodeId>,
    /// Residual of the elected head right after the election.
    pub elected_residual: f64,
}

impl SelectionAudit {
    fn new(cluster: ClusterId, alive_at_entry: u32) -> Self {
        SelectionAudit {
            cluster,
            alive_at_entry,
            k: 0,
            candidates: BTreeSet::new(),
            broadcast_msgs: 0,
            info_msgs: 0,
            request_msgs: 0,
            reply_msgs: 0,
            confirm_msgs: 0,
            setup_deaths: 0,
            elected: None,
            elected_residual: 0.0,
        }
    }

    /// All control messages this selection produced.
    pub fn total_msgs(&self) -> u64 {
        self.broadcast_msgs
            + self.info_msgs
            + self.request_msgs
            + self.reply_msgs
            + self.confirm_msgs
    }
}

/// Everything observable about one completed round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundReport {
    pub round: u32,
    pub phase: Phase,
    pub metrics: RoundMetrics,
    /// One audit per cluster that ran a selection this round.
    pub audits: Vec<SelectionAudit>,
    /// End-of-round verdict per cluster; None once a cluster has no alive
    /// member left.
    pub decisions: Vec<Option<ReselectionDecision>>,
    /// Energy drained per node during this round, indexed by node id.
    pub dissipated: Vec<f64>,
}

/// The simulation engine for one network and one scheme.
#[derive(Debug, Clone)]
pub struct Engine {
    cfg: SimConfig,
    nodes: Vec<SensorNode>,
    clusters: Vec<Cluster>,
    cn: CoordinatorNode,
    mobility: MobilityModel,
    mobility_rng: ChaCha8Rng,
    election_rng: ChaCha8Rng,
    /// Rounds completed so far.
    round: u32,
    /// Clusters flagged for reselection at the start of the next round.
    pending: Vec<bool>,
    /// Per-cluster members already rotated through headship this epoch
    /// (baseline scheme only).
    served: Vec<BTreeSet<NodeId>>,
    ledger: Vec<DebitEvent>,
    field_diagonal: f64,
}

/// Fixed RNG stream ids: one independent ChaCha stream per subsystem, all
/// derived from the master seed.
const STREAM_TOPOLOGY: u64 = 1;
const STREAM_MOBILITY: u64 = 2;
const STREAM_ELECTION: u64 = 3;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl Engine {
    /// Build an engine, generating the topology from the seed's topology
    /// stream.
    pub fn new(cfg: SimConfig) -> Result<Engine, ConfigError> {
        cfg.validate()?;
        let mut topo_rng = stream_rng(cfg.seed, STREAM_TOPOLOGY);
        let topo = generate_topology(&cfg.topology_spec(), &mut topo_rng)?;
        Engine::with_topology(cfg, topo)
    }

    /// Build an engine on a caller-supplied layout (fixtures, replays).
    /// The layout must agree with the configuration's node and cluster
    /// counts.
    pub fn with_topology(cfg: SimConfig, topo: Topology) -> Result<Engine, ConfigError> {
        cfg.validate()?;
        let total = cfg.total_nodes();
        if topo.positions.len() != total
            || topo.cluster_of.len() != total
            || topo.clusters.len() != cfg.cluster_count
        {
            return Err(ConfigError::Other(String::from(
                "topology does not match the configured node and cluster counts",
            )));
        }
        for (c, members) in topo.clusters.iter().enumerate() {
            if members.len() != cfg.nodes_per_cluster[c]
                || members.iter().any(|m| topo.cluster_of[m.index()] != c)
            {
                return Err(ConfigError::Other(String::from(
                    "topology cluster membership is inconsistent",
                )));
            }
        }

        let mut mobility_rng = stream_rng(cfg.seed, STREAM_MOBILITY);
        let election_rng = stream_rng(cfg.seed, STREAM_ELECTION);
        let mobility = MobilityModel::new(
            cfg.mobility,
            cfg.field_width,
            cfg.field_height,
            total,
            &mut mobility_rng,
        );

        let nodes: Vec<SensorNode> = topo
            .positions
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                SensorNode::new(
                    NodeId(i as u32),
                    p,
                    cfg.initial_energy,
                    cfg.failure_rate,
                    topo.cluster_of[i],
                )
            })
            .collect();
        let clusters: Vec<Cluster> = topo
            .clusters
            .iter()
            .enumerate()
            .map(|(c, members)| Cluster::new(c, members.clone()))
            .collect();

        let cluster_count = clusters.len();
        let field_diagonal = cfg.field_diagonal();
        Ok(Engine {
            cfg,
            nodes,
            clusters,
            cn: CoordinatorNode { position: topo.cn },
            mobility,
            mobility_rng,
            election_rng,
            round: 0,
            // Nothing has a head yet, so round 1 is a setup round for all.
            pending: vec![true; cluster_count],
            served: vec![BTreeSet::new(); cluster_count],
            ledger: Vec::new(),
            field_diagonal,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn nodes(&self) -> &[SensorNode] {
        &self.nodes
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn cn(&self) -> &CoordinatorNode {
        &self.cn
    }

    /// Every debit applied so far, in application order.
    pub fn ledger(&self) -> &[DebitEvent] {
        &self.ledger
    }

    pub fn rounds_completed(&self) -> u32 {
        self.round
    }

    pub fn alive_count(&self) -> u32 {
        self.nodes.iter().filter(|n| n.is_alive()).count() as u32
    }

    fn alive(&self, id: NodeId) -> bool {
        self.nodes[id.index()].is_alive()
    }

    fn alive_members(&self, c: ClusterId) -> Vec<NodeId> {
        self.clusters[c]
            .members
            .iter()
            .copied()
            .filter(|&m| self.alive(m))
            .collect()
    }

    fn debit(
        &mut self,
        id: NodeId,
        amount: f64,
        kind: DebitKind,
        round: u32,
        dissipated: &mut [f64],
    ) {
        let actual = self.nodes[id.index()].debit(amount);
        if actual > 0.0 {
            dissipated[id.index()] += actual;
            self.ledger.push(DebitEvent { round, node: id, amount: actual, kind });
        }
    }

    /// Combined rating of one alive node for the election held in `round`.
    fn rate(&self, id: NodeId, round: u32) -> f64 {
        let node = &self.nodes[id.index()];
        let history: Vec<Position> = node.position_history.iter().copied().collect();
        let factors = RatingFactors {
            energy: rating::energy_score(node.residual_energy, node.initial_energy),
            distance: rating::distance_score(&node.position, &self.cn.position, self.field_diagonal),
            reliability: rating::reliability(node.failure_rate, round - 1),
            mobility: rating::mobility_degree(&history, &node.position, self.cfg.mobility.v_max()),
        };
        rating::combined_rating(&factors, &self.cfg.weights)
    }

    /// Install `head` for cluster `c`: set the term counters of every
    /// member and book the confirmation broadcast.
    fn install_head(
        &mut self,
        c: ClusterId,
        head: NodeId,
        audit: &mut SelectionAudit,
        msgs_ctrl: &mut u64,
    ) {
        let incumbent = self.clusters[c].head == Some(head);
        let members: Vec<NodeId> = self.clusters[c].members.iter().copied().collect();
        for m in members {
            let terms = &mut self.nodes[m.index()].consecutive_ch_terms;
            *terms = if m == head {
                if incumbent {
                    (*terms + 1).min(MAX_CONSECUTIVE_TERMS)
                } else {
                    1
                }
            } else {
                0
            };
        }
        self.clusters[c].head = Some(head);
        *msgs_ctrl += 1;
        audit.confirm_msgs = 1;
        audit.elected = Some(head);
        audit.elected_residual = self.nodes[head.index()].residual_energy;
    }

    /// Frequency-voting head selection for one cluster (the cluster has at
    /// least one alive member).
    fn run_setup_ktheorem(
        &mut self,
        c: ClusterId,
        round: u32,
        msgs_ctrl: &mut u64,
        dissipated: &mut [f64],
    ) -> SelectionAudit {
        let cn_pos = self.cn.position;
        let ctrl_bits = self.cfg.energy.ctrl_bits;
        let entry_alive = self.alive_members(c);
        let n = entry_alive.len();
        let mut audit = SelectionAudit::new(c, n as u32);

        // Step I: the CN opens the selection by broadcasting k.
        audit.broadcast_msgs = 1;
        *msgs_ctrl += 1;

        // Step II: every alive member uplinks its status. The attempt
        // counts as a message even when the battery empties mid-send.
        for &m in &entry_alive {
            audit.info_msgs += 1;
            *msgs_ctrl += 1;
            let d = self.nodes[m.index()].position.distance(&cn_pos);
            let cost = self.cfg.energy.tx_energy(ctrl_bits, d);
            self.debit(m, cost, DebitKind::ControlTx, round, dissipated);
        }

        let k_entry = ktheorem::cluster_k(n, self.cfg.r).expect("config was validated");

        if n == 1 {
            // Single-member cluster: nothing to rank, the CN appoints the
            // sole member directly (if the status uplink did not kill it).
            self.clusters[c].k = 0;
            let survivor = entry_alive[0];
            if self.alive(survivor) {
                self.install_head(c, survivor, &mut audit, msgs_ctrl);
            } else {
                audit.setup_deaths = 1;
                self.clusters[c].head = None;
            }
            return audit;
        }

        let survivors: Vec<NodeId> =
            entry_alive.iter().copied().filter(|&m| self.alive(m)).collect();
        if survivors.is_empty() {
            audit.setup_deaths = n as u32;
            self.clusters[c].head = None;
            self.clusters[c].k = k_entry;
            return audit;
        }

        // Step III: neighbour lists over the survivors. k never exceeds
        // the rankable peer count and stays at least 1.
        let k_eff = k_entry.min(survivors.len() as u32 - 1).max(1);
        self.clusters[c].k = k_eff;
        audit.k = k_eff;
        let placed: Vec<(NodeId, Position)> = survivors
            .iter()
            .map(|&m| (m, self.nodes[m.index()].position))
            .collect();
        let selection = ktheorem::select(&placed, k_eff);
        audit.candidates = selection.candidates.clone();

        // Step IV: the CN requests each candidate's rating data.
        for &v in &selection.candidates {
            audit.request_msgs += 1;
            *msgs_ctrl += 1;
            if self.alive(v) {
                let cost = self.cfg.energy.rx_energy(ctrl_bits);
                self.debit(v, cost, DebitKind::ControlRx, round, dissipated);
            }
        }

        // Step V: alive candidates reply.
        for &v in &selection.candidates {
            if !self.alive(v) {
                continue;
            }
            audit.reply_msgs += 1;
            *msgs_ctrl += 1;
            let d = self.nodes[v.index()].position.distance(&cn_pos);
            let cost = self.cfg.energy.tx_energy(ctrl_bits, d);
            self.debit(v, cost, DebitKind::ControlTx, round, dissipated);
        }

        audit.setup_deaths =
            entry_alive.iter().filter(|&&m| !self.alive(m)).count() as u32;

        // Election: highest combined rating among the candidates that are
        // alive and under the term limit; then the other alive members
        // under the limit; then, as a last resort, anyone alive.
        let alive_now = self.alive_members(c);
        let ratings: Vec<(NodeId, f64)> =
            alive_now.iter().map(|&m| (m, self.rate(m, round))).collect();
        let blocked: BTreeSet<NodeId> = alive_now
            .iter()
            .copied()
            .filter(|&m| self.nodes[m.index()].consecutive_ch_terms >= MAX_CONSECUTIVE_TERMS)
            .collect();
        let candidate_ratings: Vec<(NodeId, f64)> = ratings
            .iter()
            .copied()
            .filter(|(m, _)| selection.candidates.contains(m))
            .collect();
        let other_ratings: Vec<(NodeId, f64)> = ratings
            .iter()
            .copied()
            .filter(|(m, _)| !selection.candidates.contains(m))
            .collect();
        let elected = rating::elect_head(&candidate_ratings, &blocked)
            .or_else(|| rating::elect_head(&other_ratings, &blocked))
            .or_else(|| rating::elect_head(&ratings, &BTreeSet::new()));

        match elected {
            Some(h) => self.install_head(c, h, &mut audit, msgs_ctrl),
            None => self.clusters[c].head = None,
        }
        audit
    }

    /// Random-rotation head selection: a uniform draw among the alive
    /// members that have not served in the current epoch. The rotation
    /// rides on the CN's regular signalling, so the cluster pays no energy
    /// and the network books a flat two control messages.
    fn run_setup_baseline(
        &mut self,
        c: ClusterId,
        msgs_ctrl: &mut u64,
    ) -> SelectionAudit {
        let alive = self.alive_members(c);
        let mut audit = SelectionAudit::new(c, alive.len() as u32);
        audit.broadcast_msgs = 2;
        *msgs_ctrl += 2;

        let mut eligible: Vec<NodeId> = alive
            .iter()
            .copied()
            .filter(|m| !self.served[c].contains(m))
            .collect();
        if eligible.is_empty() {
            // Every alive member has served: start the rotation over.
            self.served[c].clear();
            eligible = alive.clone();
        }
        let pick = eligible[self.election_rng.gen_range(0..eligible.len())];
        self.served[c].insert(pick);
        self.clusters[c].k =
            ktheorem::cluster_k(alive.len(), self.cfg.r).expect("config was validated");
        self.install_head(c, pick, &mut audit, msgs_ctrl);
        // install_head books one confirmation on top of the flat two; the
        // baseline's advertised cost is exactly two, so fold it back in.
        audit.confirm_msgs = 0;
        *msgs_ctrl -= 1;
        audit
    }

    /// Run one round. Returns None once the configured round budget is
    /// exhausted.
    pub fn step(&mut self) -> Option<RoundReport> {
        if self.round >= self.cfg.max_rounds {
            return None;
        }
        self.round += 1;
        let round = self.round;
        let total = self.nodes.len();
        let mut msgs_data: u64 = 0;
        let mut msgs_ctrl: u64 = 0;
        let mut dissipated = vec![0.0f64; total];

        // ---- Phase A: movement, then term bookkeeping. -----------------
        let window = self.cfg.mobility_window;
        let mut positions: Vec<Position> = self.nodes.iter().map(|n| n.position).collect();
        for node in &mut self.nodes {
            let here = node.position;
            node.push_history(here, window);
        }
        self.mobility.step(&mut positions, &mut self.mobility_rng);
        for (node, p) in self.nodes.iter_mut().zip(&positions) {
            node.position = *p;
        }

        // Which clusters reselect this round?
        let reselecting: Vec<ClusterId> = match self.cfg.scheme {
            Scheme::KTheorem => (0..self.clusters.len())
                .filter(|&c| self.pending[c] && !self.alive_members(c).is_empty())
                .collect(),
            // The baseline rotates every cluster every round.
            Scheme::RandomBaseline => (0..self.clusters.len())
                .filter(|&c| !self.alive_members(c).is_empty())
                .collect(),
        };

        // A head that continues into this round serves one more term.
        for c in 0..self.clusters.len() {
            if reselecting.contains(&c) {
                continue;
            }
            if let Some(h) = self.clusters[c].head {
                if self.alive(h) {
                    let terms = &mut self.nodes[h.index()].consecutive_ch_terms;
                    *terms = (*terms + 1).min(MAX_CONSECUTIVE_TERMS);
                }
            }
        }

        // ---- Phase B: setup or maintenance. -----------------------------
        if self.cfg.scheme == Scheme::RandomBaseline
            && (round - 1) % self.cfg.epoch_len() == 0
        {
            for served in &mut self.served {
                served.clear();
            }
        }

        let phase = if reselecting.is_empty() { Phase::Maintenance } else { Phase::Setup };
        let mut audits: Vec<SelectionAudit> = Vec::with_capacity(reselecting.len());
        match phase {
            Phase::Setup => {
                for &c in &reselecting {
                    let audit = match self.cfg.scheme {
                        Scheme::KTheorem => {
                            self.run_setup_ktheorem(c, round, &mut msgs_ctrl, &mut dissipated)
                        }
                        Scheme::RandomBaseline => self.run_setup_baseline(c, &mut msgs_ctrl),
                    };
                    audits.push(audit);
                }
            }
            Phase::Maintenance => {
                // One CN beacon per alive node keeps the schedule fresh.
                let rx = self.cfg.energy.rx_energy(self.cfg.energy.ctrl_bits);
                for i in 0..total {
                    let id = NodeId(i as u32);
                    if self.alive(id) {
                        msgs_ctrl += 1;
                        self.debit(id, rx, DebitKind::Maintenance, round, &mut dissipated);
                    }
                }
            }
        }

        // ---- Steady state: TDMA collection and uplink. -------------------
        let packet_bits = self.cfg.energy.packet_bits;
        let cn_pos = self.cn.position;
        for c in 0..self.clusters.len() {
            let Some(h) = self.clusters[c].head else { continue };
            let slots: Vec<NodeId> = self.clusters[c]
                .members
                .iter()
                .copied()
                .filter(|&m| m != h)
                .collect();
            let mut received: u32 = 0;
            for m in slots {
                if !self.alive(m) {
                    continue;
                }
                msgs_data += 1;
                let d = self.nodes[m.index()].position.distance(&self.nodes[h.index()].position);
                let cost = self.cfg.energy.tx_energy(packet_bits, d);
                let before = self.nodes[m.index()].residual_energy;
                self.debit(m, cost, DebitKind::DataTx, round, &mut dissipated);
                let paid_in_full = before >= cost;
                if paid_in_full && self.alive(h) {
                    let rx = self.cfg.energy.rx_energy(packet_bits);
                    self.debit(h, rx, DebitKind::DataRx, round, &mut dissipated);
                    received += 1;
                }
            }
            if self.alive(h) && received > 0 {
                let agg = self.cfg.energy.aggregation_energy(packet_bits, received);
                self.debit(h, agg, DebitKind::Aggregation, round, &mut dissipated);
            }
            if self.alive(h) {
                // The head uplinks one aggregated packet; if it died while
                // receiving or aggregating, this round's payload is lost.
                msgs_data += 1;
                let d = self.nodes[h.index()].position.distance(&cn_pos);
                let cost = self.cfg.energy.tx_energy(packet_bits, d);
                self.debit(h, cost, DebitKind::DataTx, round, &mut dissipated);
            }
        }

        // ---- End of round: per-cluster head verdicts. --------------------
        // The serving head of this round, before any cleanup.
        let ch_ids: Vec<Option<NodeId>> = self.clusters.iter().map(|c| c.head).collect();
        let mut decisions: Vec<Option<ReselectionDecision>> = vec![None; self.clusters.len()];
        for c in 0..self.clusters.len() {
            let alive_members = self.alive_members(c).len() as u32;
            if alive_members == 0 {
                self.clusters[c].head = None;
                self.pending[c] = true;
                continue;
            }
            let decision = match self.clusters[c].head {
                None => ReselectionDecision::ForcedReselect,
                Some(h) if !self.alive(h) => ReselectionDecision::ForcedReselect,
                Some(h) => {
                    let node = &self.nodes[h.index()];
                    reselection_decision(
                        true,
                        node.residual_energy,
                        dissipated[h.index()],
                        node.consecutive_ch_terms,
                        alive_members,
                        self.clusters[c].k,
                    )
                }
            };
            decisions[c] = Some(decision);
            self.pending[c] = decision != ReselectionDecision::Continue;
        }

        // ---- Metrics. ----------------------------------------------------
        let residuals: Vec<f64> = self.nodes.iter().map(|n| n.residual_energy).collect();
        let alive = self.alive_count();
        let total_residual: f64 = residuals.iter().sum();
        let variance = math::population_variance(&residuals);
        let metrics = RoundMetrics::new(
            round,
            alive,
            total_residual,
            variance,
            msgs_data,
            msgs_ctrl,
            audits.len() as u32,
            ch_ids,
        );
        Some(RoundReport { round, phase, metrics, audits, decisions, dissipated })
    }
}
