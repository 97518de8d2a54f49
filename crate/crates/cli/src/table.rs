//! CSV rows for `sweep` and `fig3`.

use std::io::Write;

use ldm_wiretap::{normalize_config, rate_report, Rational, RateReport};
use rayon::prelude::*;

use crate::error::CliError;
use crate::spec::{EveRule, SweepSpec};

pub const HEADER: [&str; 20] = [
    "n11",
    "n21",
    "n22",
    "n12",
    "n1",
    "n2",
    "nE",
    "n_delta",
    "regime",
    "alpha",
    "r_ach",
    "r_ub",
    "r_ach_norm",
    "r_ub_norm",
    "red_curve_norm",
    "alpha_dec",
    "r_ub_dec",
    "r_ach_norm_dec",
    "r_ub_norm_dec",
    "red_curve_norm_dec",
];

fn dec(r: &Rational) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

pub fn record(rep: &RateReport) -> Vec<String> {
    let c = &rep.cfg;
    let alpha = rep.alpha.map(|a| a.to_string()).unwrap_or_default();
    let alpha_dec = rep.alpha.as_ref().map(dec).unwrap_or_default();
    vec![
        c.n11.to_string(),
        c.n21.to_string(),
        c.n22.to_string(),
        c.n12.to_string(),
        c.n1.to_string(),
        c.n2.to_string(),
        c.n_e.to_string(),
        c.n_delta.to_string(),
        c.regime.to_string(),
        alpha,
        rep.r_ach.to_string(),
        rep.r_ub.to_string(),
        rep.r_ach_norm.to_string(),
        rep.r_ub_norm.to_string(),
        rep.red_curve_norm.to_string(),
        alpha_dec,
        dec(&rep.r_ub),
        dec(&rep.r_ach_norm),
        dec(&rep.r_ub_norm),
        dec(&rep.red_curve_norm),
    ]
}

/// Rate reports for every configuration of the sweep, in lexicographic order
/// of the raw gains.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<RateReport>, CliError> {
    let cfgs = spec.sweep_configs()?;
    Ok(cfgs
        .par_iter()
        .map(|&[a, b, c, d]| rate_report(&normalize_config(a, b, c, d)))
        .collect())
}

/// One row per realizable `alpha` with `n11 = n1_fixed`, `n21 = alpha n11`.
/// Alphas that do not give an integer `n21` come back as warnings.
pub fn fig3_rows(spec: &SweepSpec) -> Result<(Vec<RateReport>, Vec<String>), CliError> {
    let n1 = spec.n1_fixed();
    if n1 < 2 {
        return Err(CliError::Usage(format!("n1_fixed must be at least 2, got {n1}")));
    }
    let rule = spec.eavesdropper.unwrap_or(EveRule::NMax);
    let mut warnings = Vec::new();
    let mut gains = Vec::new();
    for alpha in spec.alpha_grid() {
        if alpha <= Rational::from_integer(0) {
            return Err(CliError::Usage(format!("alpha must be positive, got {alpha}")));
        }
        let n2 = alpha * i64::from(n1);
        if !n2.is_integer() || *n2.numer() > i64::from(u32::MAX) {
            warnings.push(format!("skipping alpha={alpha}: n21 = {n2} is not an integer"));
            continue;
        }
        let n2 = *n2.numer() as u32;
        let e = rule.gain(n1, n2);
        gains.push([n1, n2, e, e]);
    }
    let rows = gains
        .par_iter()
        .map(|&[a, b, c, d]| rate_report(&normalize_config(a, b, c, d)))
        .collect();
    Ok((rows, warnings))
}

/// Renders rows as CSV: UTF-8, LF line endings, header always present.
pub fn to_csv(rows: &[RateReport]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(HEADER)?;
    for rep in rows {
        w.write_record(record(rep))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn write_output(bytes: &[u8], path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
