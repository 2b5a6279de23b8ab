//! Rendering of paired-comparison results: a per-pair CSV and a short
//! human-readable summary.

use wsn_core::metrics::format_sig9;
use wsn_core::runner::Comparison;
use wsn_core::Scheme;

/// Short column-name slug for a scheme.
pub fn scheme_slug(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::KTheorem => "ktheorem",
        Scheme::RandomBaseline => "baseline",
    }
}

fn fnd_field(fnd: Option<u32>) -> String {
    match fnd {
        Some(round) => round.to_string(),
        // No death within the round budget: the value is censored.
        None => "-".to_string(),
    }
}

/// Per-pair CSV: one row per replication, `-` for a censored first death.
pub fn pairs_csv(cmp: &Comparison) -> String {
    let a = scheme_slug(cmp.scheme_a);
    let b = scheme_slug(cmp.scheme_b);
    let mut out = format!(
        "replication,seed,fnd_{a},fnd_{b},variance_{a},variance_{b},checkpoint_round\n"
    );
    for p in &cmp.pairs {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.replication,
            p.seed,
            fnd_field(p.fnd_a),
            fnd_field(p.fnd_b),
            format_sig9(p.variance_a),
            format_sig9(p.variance_b),
            p.checkpoint_round,
        ));
    }
    out
}

/// Human-readable summary of a comparison.
pub fn summary_text(cmp: &Comparison, max_rounds: u32) -> String {
    let a = scheme_slug(cmp.scheme_a);
    let b = scheme_slug(cmp.scheme_b);
    let n = cmp.pairs.len();
    let censored_a = cmp.pairs.iter().filter(|p| p.fnd_a.is_none()).count();
    let censored_b = cmp.pairs.iter().filter(|p| p.fnd_b.is_none()).count();
    let mut out = String::new();
    out.push_str(&format!("paired replications      : {n}\n"));
    out.push_str(&format!(
        "mean first-death round   : {a} {:.1} vs {b} {:.1} (censored at {max_rounds}: {censored_a}/{censored_b})\n",
        cmp.mean_fnd_a, cmp.mean_fnd_b
    ));
    out.push_str(&format!(
        "lifetime ratio ({a}/{b})  : {:.3}\n",
        cmp.mean_fnd_a / cmp.mean_fnd_b
    ));
    out.push_str(&format!(
        "energy-balance wins      : {a} had lower variance in {}/{n} pairs ({:.1}%)\n",
        cmp.variance_a_wins,
        100.0 * cmp.variance_win_fraction()
    ));
    out
}
