//! Whole-run and paired-comparison drivers on top of the engine.

use alloc::string::String;
use alloc::vec::Vec;

use crate::config::{ConfigError, Scheme, SimConfig};
use crate::engine::Engine;
use crate::metrics::RunResult;

/// Simulate one configuration to its round budget (or to network
/// extinction, whichever comes first).
pub fn run(cfg: &SimConfig) -> Result<RunResult, ConfigError> {
    let mut engine = Engine::new(cfg.clone())?;
    Ok(run_engine(&mut engine))
}

/// Drive an already-built engine to completion. Useful when the caller
/// injected a hand-made layout.
pub fn run_engine(engine: &mut Engine) -> RunResult {
    let total = engine.config().total_nodes() as u32;
    let mut metrics = Vec::new();
    let mut first_death = None;
    let mut last_death = None;
    let mut total_messages: u64 = 0;
    while let Some(report) = engine.step() {
        let m = report.metrics;
        total_messages += m.msgs_data + m.msgs_ctrl;
        if first_death.is_none() && m.alive < total {
            first_death = Some(m.round);
        }
        if last_death.is_none() && m.alive == 0 {
            last_death = Some(m.round);
        }
        let extinct = m.alive == 0;
        metrics.push(m);
        if extinct {
            // Nothing left to simulate; later rounds would be all-zero.
            break;
        }
    }
    RunResult {
        metrics,
        first_node_death_round: first_death,
        last_node_death_round: last_death,
        total_messages,
        final_residuals: engine.nodes().iter().map(|n| n.residual_energy).collect(),
    }
}

/// One seed simulated under both schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    /// 0-based replication index.
    pub replication: u32,
    /// Seed used by both runs of this pair.
    pub seed: u64,
    /// First-node-death round under scheme A / scheme B; None when no node
    /// died within the round budget.
    pub fnd_a: Option<u32>,
    pub fnd_b: Option<u32>,
    /// Residual-energy variance of the two runs at the checkpoint round.
    pub variance_a: f64,
    pub variance_b: f64,
    /// The earlier of the two first-death rounds, or the shorter run length
    /// when nobody died. Both variances are read from this round's metrics
    /// so the schemes are measured on a common clock.
    pub checkpoint_round: u32,
}

/// Aggregate of a paired comparison between two schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub scheme_a: Scheme,
    pub scheme_b: Scheme,
    pub pairs: Vec<PairOutcome>,
    /// Mean first-node-death round, censored at the round budget when no
    /// node died.
    pub mean_fnd_a: f64,
    pub mean_fnd_b: f64,
    /// Pairs where scheme A's checkpoint variance is strictly lower.
    pub variance_a_wins: u32,
}

impl Comparison {
    /// Fraction of pairs won by scheme A on checkpoint variance.
    pub fn variance_win_fraction(&self) -> f64 {
        self.variance_a_wins as f64 / self.pairs.len() as f64
    }
}

fn checkpoint_of(result: &RunResult) -> u32 {
    result
        .first_node_death_round
        .unwrap_or(result.metrics.len() as u32)
}

/// Run `replications` paired simulations. Pair i uses seed `cfg.seed + i`
/// for both schemes, so every difference within a pair is caused by the
/// scheme, not the draw.
fn compare_schemes(
    cfg: &SimConfig,
    replications: u32,
    scheme_a: Scheme,
    scheme_b: Scheme,
) -> Result<Comparison, ConfigError> {
    if replications == 0 {
        return Err(ConfigError::Other(String::from(
            "a comparison needs at least one replication",
        )));
    }
    if cfg.max_rounds == 0 {
        return Err(ConfigError::Other(String::from(
            "a comparison needs max_rounds of at least 1",
        )));
    }
    let mut pairs = Vec::with_capacity(replications as usize);
    let mut sum_fnd_a = 0.0;
    let mut sum_fnd_b = 0.0;
    let mut variance_a_wins = 0;
    for i in 0..replications {
        let mut c = cfg.clone();
        c.seed = cfg.seed.wrapping_add(i as u64);
        c.scheme = scheme_a;
        let result_a = run(&c)?;
        c.scheme = scheme_b;
        let result_b = run(&c)?;

        let checkpoint = checkpoint_of(&result_a).min(checkpoint_of(&result_b));
        let variance_a = result_a.metrics[checkpoint as usize - 1].residual_variance;
        let variance_b = result_b.metrics[checkpoint as usize - 1].residual_variance;
        if variance_a < variance_b {
            variance_a_wins += 1;
        }
        sum_fnd_a += result_a.first_node_death_round.unwrap_or(cfg.max_rounds) as f64;
        sum_fnd_b += result_b.first_node_death_round.unwrap_or(cfg.max_rounds) as f64;
        pairs.push(PairOutcome {
            replication: i,
            seed: c.seed,
            fnd_a: result_a.first_node_death_round,
            fnd_b: result_b.first_node_death_round,
            variance_a,
            variance_b,
            checkpoint_round: checkpoint,
        });
    }
    Ok(Comparison {
        scheme_a,
        scheme_b,
        pairs,
        mean_fnd_a: sum_fnd_a / replications as f64,
        mean_fnd_b: sum_fnd_b / replications as f64,
        variance_a_wins,
    })
}

/// Paired comparison of the frequency-voting scheme (A) against the
/// random-rotation baseline (B).
pub fn compare(cfg: &SimConfig, replications: u32) -> Result<Comparison, ConfigError> {
    compare_schemes(cfg, replications, Scheme::KTheorem, Scheme::RandomBaseline)
}
