//! Sampling experiments on the particle number: CLT and tail bound.

use super::{json, sections, spectra};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use toeplab_fermion as fm;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CltParams {
    pub samples: usize,
}

impl Default for CltParams {
    fn default() -> Self {
        Self { samples: 100_000 }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CltTolerances {
    /// Continuity-corrected KS distance at the largest k.
    pub ks: f64,
    /// `|sample variance / κ₂ - 1|` at the largest k.
    pub variance_rel: f64,
}

impl Default for CltTolerances {
    fn default() -> Self {
        Self {
            ks: 0.02,
            variance_rel: 0.03,
        }
    }
}

/// The verdict follows the continuity-corrected KS distance: for an
/// integer-valued count the plain KS distance to any continuous law stays
/// near half the largest atom. Both are tabulated.
pub fn clt(r: &Resolved) -> Result<Outcome> {
    let (p, t): (CltParams, CltTolerances) = sections(r)?;
    if p.samples < 2 {
        return Err(config_err("parameters.samples: need at least 2"));
    }
    let specs = spectra(r)?;
    let report = fm::clt_check(&specs, p.samples, r.seed(), t.ks).map_err(compute_err)?;
    let mut table = Table::new(&[
        "k",
        "mean",
        "kappa2",
        "sample_variance",
        "variance_ratio",
        "ks_corrected_exact",
        "ks_corrected_sampled",
        "ks_raw",
    ]);
    for row in &report.rows {
        table.push(vec![
            row.k.into(),
            row.mean.into(),
            row.kappa2.into(),
            row.sample_variance.into(),
            row.variance_ratio.into(),
            row.ks_exact.into(),
            row.ks_sampled.into(),
            row.ks_raw.into(),
        ]);
    }
    let top = report.rows.last().expect("non-empty ladder");
    let mut verdicts = vec![
        Verdict::at_most("corrected KS distance (sampled) at largest k", top.ks_sampled, t.ks),
        Verdict::at_most("|variance ratio - 1| at largest k", (top.variance_ratio - 1.0).abs(), t.variance_rel),
        Verdict::holds(
            "sampled KS within the DKW band of the exact value",
            report.sampling_consistent,
            format!("|sampled - exact| <= {:.3e}", report.dkw_radius),
        ),
    ];
    if report.rows.len() > 1 {
        verdicts.push(Verdict::holds(
            "corrected KS distance (exact) decreasing along the ladder",
            report.decreasing,
            "strictly decreasing",
        ));
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::json!({
            "alpha_c": report.alpha_c,
            "predicted_variance": report.predicted_variance,
            "dkw_radius": report.dkw_radius,
        }),
    })
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct TailParams {
    pub samples: usize,
    pub betas: Vec<f64>,
}

impl Default for TailParams {
    fn default() -> Self {
        Self {
            samples: 100_000,
            betas: vec![0.3],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct TailTolerances {
    /// Largest admissible fitted C.
    pub c_max: f64,
}

impl Default for TailTolerances {
    fn default() -> Self {
        Self { c_max: 10.0 }
    }
}

pub fn tails(r: &Resolved) -> Result<Outcome> {
    let (p, t): (TailParams, TailTolerances) = sections(r)?;
    if p.samples == 0 || p.betas.is_empty() || p.betas.iter().any(|&b| !(b > 0.0)) {
        return Err(config_err("parameters: need samples >= 1 and a non-empty list of betas > 0"));
    }
    let specs = spectra(r)?;
    let seed = r.seed();
    // the same samples serve every beta at a given k, so exceedances are
    // monotone in beta by construction of the threshold
    let jobs: Vec<(f64, usize)> = p
        .betas
        .iter()
        .flat_map(|&b| (0..specs.len()).map(move |i| (b, i)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(beta, i)| {
            let s = fm::rung_seed(seed, i);
            fm::tail_check(&specs[i], beta, p.samples, s, t.c_max).map_err(compute_err)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&[
        "beta",
        "k",
        "threshold",
        "exponent",
        "exceedances",
        "frequency",
        "fitted_c",
        "exact_probability",
        "exact_c",
        "bound",
    ]);
    for rep in &reports {
        table.push(vec![
            rep.beta.into(),
            rep.k.into(),
            rep.threshold.into(),
            rep.exponent.into(),
            rep.exceedances.into(),
            rep.frequency.into(),
            rep.fitted_c.into(),
            rep.exact_probability.into(),
            rep.exact_c.into(),
            rep.bound.into(),
        ]);
    }
    let sampled = reports.iter().map(|r| r.fitted_c).fold(0.0f64, f64::max);
    let exact = reports.iter().map(|r| r.exact_c).fold(0.0f64, f64::max);
    let mut verdicts = vec![
        Verdict::at_most("largest C fitted to sampled frequencies", sampled, t.c_max),
        Verdict::at_most("largest C fitted to exact tail probabilities", exact, t.c_max),
    ];
    if p.betas.len() > 1 {
        // larger beta means a higher threshold, so fewer exceedances
        let monotone = (0..specs.len()).all(|i| {
            let mut by_beta: Vec<(f64, usize)> = reports
                .iter()
                .filter(|r| r.k == specs[i].k)
                .map(|r| (r.beta, r.exceedances))
                .collect();
            by_beta.sort_by(|a, b| a.0.total_cmp(&b.0));
            by_beta.windows(2).all(|w| w[1].1 <= w[0].1)
        });
        verdicts.push(Verdict::holds(
            "exceedances non-increasing in beta at every k",
            monotone,
            "non-increasing",
        ));
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::Value::Null,
    })
}
