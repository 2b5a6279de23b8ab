//! Command-line harness for the clustered WSN lifetime simulator.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use wsn_core::ktheorem;
use wsn_core::runner;
use wsn_core::{Scheme, SimConfig};
use wsn_sim::{config_file, csv, report};

#[derive(Parser)]
#[command(
    name = "wsn-sim",
    version,
    about = "Lifetime simulator for a clustered wireless sensor network with a coordinator node"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    /// k-NN frequency candidate selection with combined-rating election.
    Ktheorem,
    /// Uniform random head rotation.
    Baseline,
}

impl From<SchemeArg> for Scheme {
    fn from(arg: SchemeArg) -> Scheme {
        match arg {
            SchemeArg::Ktheorem => Scheme::KTheorem,
            SchemeArg::Baseline => Scheme::RandomBaseline,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one scheme and emit the per-round metrics CSV.
    Simulate {
        /// JSON configuration file; omit for the default scenario ({} is
        /// a valid file: every field has a default).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the round budget.
        #[arg(long)]
        rounds: Option<u32>,
        /// Override the head-selection scheme.
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both schemes on paired seeds and summarize the comparison.
    Compare {
        /// JSON configuration file; omit for the default scenario.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of paired replications (pair i uses seed + i).
        #[arg(long, default_value_t = 30)]
        replications: u32,
        /// Write the per-pair CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bundled ten-node worked example of candidate selection.
    Table1,
}

fn load_or_default(config: Option<&PathBuf>) -> Result<SimConfig> {
    match config {
        Some(path) => config_file::load_config(path),
        None => Ok(SimConfig::default()),
    }
}

fn simulate(
    config: Option<PathBuf>,
    seed: Option<u64>,
    rounds: Option<u32>,
    scheme: Option<SchemeArg>,
    out: Option<PathBuf>,
) -> Result<()> {
    let mut cfg = load_or_default(config.as_ref())?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(rounds) = rounds {
        cfg.max_rounds = rounds;
    }
    if let Some(scheme) = scheme {
        cfg.scheme = scheme.into();
    }
    let result = runner::run(&cfg)?;
    let text = csv::write_metrics_csv(&result.metrics);
    match out {
        Some(path) => {
            fs::write(&path, &text)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!(
                "{} rounds simulated, {} messages, first death {}, written to {}",
                result.metrics.len(),
                result.total_messages,
                result
                    .first_node_death_round
                    .map_or_else(|| "never".to_string(), |r| format!("round {r}")),
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn compare(config: Option<PathBuf>, replications: u32, out: Option<PathBuf>) -> Result<()> {
    let cfg = load_or_default(config.as_ref())?;
    let cmp = runner::compare(&cfg, replications)?;
    if let Some(path) = out {
        fs::write(&path, report::pairs_csv(&cmp))
            .with_context(|| format!("cannot write {}", path.display()))?;
        println!("per-pair results written to {}", path.display());
    }
    print!("{}", report::summary_text(&cmp, cfg.max_rounds));
    Ok(())
}

fn table1() {
    let lists = ktheorem::reference_lists();
    let frequencies = ktheorem::frequency_of_occurrence(&lists);
    let threshold = ktheorem::selection_threshold(&frequencies);
    let candidates = ktheorem::candidate_set(&frequencies, threshold, 3);

    println!("ten-node worked example (k = 3)");
    println!("node | 3 nearest neighbours | frequency");
    for list in &lists {
        let neighbours: Vec<String> = list.neighbors.iter().map(|n| n.to_string()).collect();
        println!(
            "{:>4} | {:<20} | {}",
            list.owner.to_string(),
            neighbours.join(" "),
            frequencies[&list.owner]
        );
    }
    println!("threshold K = {threshold}");
    let members: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
    println!("candidates  = {{{}}}", members.join(", "));
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Simulate { config, seed, rounds, scheme, out } => {
            simulate(config, seed, rounds, scheme, out)
        }
        Command::Compare { config, replications, out } => compare(config, replications, out),
        Command::Table1 => {
            table1();
            Ok(())
        }
    }
}
