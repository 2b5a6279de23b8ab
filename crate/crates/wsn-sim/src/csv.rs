//! The per-round metrics CSV format.
//!
//! One row per round. Floats carry 9 significant digits, which is exactly
//! the precision `RoundMetrics` stores, so emitting and re-parsing a
//! metrics series reproduces it bit for bit. The `ch_ids` column joins the
//! per-cluster head ids with semicolons, writing `-` for a cluster without
//! a head.

use anyhow::{bail, ensure, Context, Result};
use wsn_core::metrics::format_sig9;
use wsn_core::{NodeId, RoundMetrics};

/// Exact header line of a metrics CSV.
pub const METRICS_HEADER: &str =
    "round,alive,total_residual_j,residual_variance,msgs_data,msgs_ctrl,reselections,ch_ids";

fn ch_ids_field(ch_ids: &[Option<NodeId>]) -> String {
    let parts: Vec<String> = ch_ids
        .iter()
        .map(|h| match h {
            Some(id) => id.0.to_string(),
            None => "-".to_string(),
        })
        .collect();
    parts.join(";")
}

/// Render a metrics series as CSV, header included.
pub fn write_metrics_csv(metrics: &[RoundMetrics]) -> String {
    let mut out = String::with_capacity(64 * (metrics.len() + 1));
    out.push_str(METRICS_HEADER);
    out.push('\n');
    for m in metrics {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            m.round,
            m.alive,
            format_sig9(m.total_residual_j),
            format_sig9(m.residual_variance),
            m.msgs_data,
            m.msgs_ctrl,
            m.reselections,
            ch_ids_field(&m.ch_ids),
        ));
    }
    out
}

/// Parse a metrics CSV produced by `write_metrics_csv`. The header and
/// every field are checked strictly; anything unexpected is an error.
pub fn parse_metrics_csv(text: &str) -> Result<Vec<RoundMetrics>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == METRICS_HEADER => {}
        Some(header) => bail!("unexpected header: {header:?}"),
        None => bail!("empty input"),
    }
    let mut metrics = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2; // 1-based, after the header
        let fields: Vec<&str> = line.split(',').collect();
        ensure!(fields.len() == 8, "line {row}: expected 8 fields, got {}", fields.len());
        let ch_ids = fields[7]
            .split(';')
            .map(|part| match part {
                "-" => Ok(None),
                id => id
                    .parse::<u32>()
                    .map(|n| Some(NodeId(n)))
                    .with_context(|| format!("line {row}: bad head id {part:?}")),
            })
            .collect::<Result<Vec<Option<NodeId>>>>()?;
        metrics.push(RoundMetrics::new(
            fields[0].parse().with_context(|| format!("line {row}: bad round"))?,
            fields[1].parse().with_context(|| format!("line {row}: bad alive count"))?,
            fields[2].parse().with_context(|| format!("line {row}: bad total residual"))?,
            fields[3].parse().with_context(|| format!("line {row}: bad variance"))?,
            fields[4].parse().with_context(|| format!("line {row}: bad data count"))?,
            fields[5].parse().with_context(|| format!("line {row}: bad control count"))?,
            fields[6].parse().with_context(|| format!("line {row}: bad reselection count"))?,
            ch_ids,
        ));
    }
    Ok(metrics)
}
