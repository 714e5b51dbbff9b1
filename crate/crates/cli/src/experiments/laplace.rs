//! Laplace integrals `∫_D e^{-kφ(t,s)} dt ds` over `D = {0 ≤ s ≤ t}` and
//! `-D`: quadrature oracle against the computed series, fitted leading
//! coefficients and the decay of the remainder.

use super::{json, sections};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use toeplab_asymptotics::{
    fit_expansion, quadrature_oracle, series_coefficients, ConicDomain, MomentOptions, OracleOptions,
    PhaseData, QuadraticForm, TaylorMap,
};

/// Named test phases `t²/2 + r(t, s)`.
pub const PHASES: &[(&str, &[([u32; 2], f64)])] = &[
    ("cubic", &[([3, 0], 0.3)]),
    ("mixed", &[([2, 1], 0.2), ([1, 2], -0.1)]),
    ("quartic", &[([3, 0], 0.1), ([0, 4], 0.2)]),
    ("quadratic", &[]),
];

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Names from `cubic`, `mixed`, `quartic`, `quadratic`.
    pub phases: Vec<String>,
    /// Terms fitted to the oracle values (at most 4).
    pub fit_terms: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            phases: vec!["cubic".into(), "mixed".into(), "quartic".into()],
            fit_terms: 4,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Fitted b0 against the series value.
    pub b0_rel: f64,
    /// The remainder after b0, b1, b2 must decay with log-log slope at
    /// least `(dim t + dim s + 3)/2 - slope_margin`.
    pub slope_margin: f64,
    /// Fitted b1 must exceed this many fit errors in magnitude (when the
    /// series b1 is nonzero).
    pub nonzero_sigmas: f64,
    /// `|b1(D) + b1(-D)| / |b1(D)|` for the reflected domain.
    pub flip_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            b0_rel: 0.01,
            slope_margin: 0.2,
            nonzero_sigmas: 3.0,
            flip_rel: 0.02,
        }
    }
}

fn phase(name: &str) -> Result<PhaseData> {
    let terms = PHASES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| config_err(format!("parameters.phases: unknown phase `{name}`")))?;
    let mut r = TaylorMap::polynomial(2);
    for (e, c) in terms {
        r.add_term(e, Complex64::new(*c, 0.0));
    }
    let q = QuadraticForm::diagonal(&[1.0]).map_err(compute_err)?;
    PhaseData::new(q, 1, r).map_err(compute_err)
}

/// Least-squares slope of `-ln y` against `ln k`.
fn decay_slope(ks: &[f64], ys: &[f64]) -> f64 {
    let n = ks.len() as f64;
    let xs: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| -y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let ml = ls.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, l)| (x - mx) * (l - ml)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

struct CaseResult {
    name: String,
    values: Vec<Complex64>,
    series: toeplab_asymptotics::AsymptoticSeries,
    fit: toeplab_asymptotics::FitReport,
    slope: f64,
}

pub fn run(r: &Resolved) -> Result<Outcome> {
    let (p, t): (Params, Tolerances) = sections(r)?;
    if p.phases.is_empty() {
        return Err(config_err("parameters.phases: must not be empty"));
    }
    if !(2..=toeplab_asymptotics::MAX_FIT_TERMS).contains(&p.fit_terms) {
        return Err(config_err(format!(
            "parameters.fit_terms: must lie in 2..={}",
            toeplab_asymptotics::MAX_FIT_TERMS
        )));
    }
    if r.ladder.len() < p.fit_terms + 2 {
        return Err(config_err(format!(
            "k_ladder: fitting {} terms needs at least {} values",
            p.fit_terms,
            p.fit_terms + 2
        )));
    }
    let ks = r.ladder_f64();
    let cone = ConicDomain::standard(1, &[0]).map_err(compute_err)?;
    let mut cases = Vec::new();
    for name in &p.phases {
        let ph = phase(name)?;
        cases.push((format!("{name}/D"), ph.clone(), cone.clone()));
        cases.push((format!("{name}/-D"), ph, cone.negated()));
    }
    let amplitude = TaylorMap::constant(2, 1.0);
    let results = cases
        .par_iter()
        .map(|(name, ph, dom)| {
            let series = series_coefficients(ph, &amplitude, dom, 3, &MomentOptions::default())
                .map_err(compute_err)?;
            let values = ks
                .par_iter()
                .map(|&k| {
                    quadrature_oracle(
                        |t, s| ph.eval(t, s),
                        |_, _| Complex64::new(1.0, 0.0),
                        dom,
                        k,
                        &OracleOptions::default(),
                    )
                    .map(|e| e.value)
                    .map_err(compute_err)
                })
                .collect::<Result<Vec<_>>>()?;
            let fit = fit_expansion(&values, &ks, series.leading_power, p.fit_terms).map_err(compute_err)?;
            let rem: Vec<f64> = values
                .iter()
                .zip(&ks)
                .map(|(v, &k)| (v - series.partial_sum(k, 2)).norm())
                .collect();
            let slope = decay_slope(&ks, &rem);
            Ok(CaseResult {
                name: name.clone(),
                values,
                series,
                fit,
                slope,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&["case", "k", "actual", "predicted", "ratio", "remainder"]);
    for c in &results {
        for (v, &k) in c.values.iter().zip(&ks) {
            let pred = c.series.partial_sum(k, 2);
            table.push(vec![
                c.name.as_str().into(),
                (k as u32).into(),
                v.re.into(),
                pred.re.into(),
                (v.re / pred.re).into(),
                (v - pred).norm().into(),
            ]);
        }
    }

    // D ⊂ ℝ^{1+1}: leading power (1+1)/2, remainder after b2 ~ k^{-(1+1+3)/2}
    let slope_min = (1.0 + 1.0 + 3.0) / 2.0 - t.slope_margin;
    let mut verdicts = Vec::new();
    for c in &results {
        let b0 = c.series.coefficients[0].re;
        verdicts.push(Verdict::at_most(
            format!("{}: fitted b0 against the series", c.name),
            (c.fit.coefficients[0].re - b0).abs() / b0.abs(),
            t.b0_rel,
        ));
        verdicts.push(Verdict::at_least(
            format!("{}: remainder slope after b0..b2", c.name),
            c.slope,
            slope_min,
        ));
    }
    for pair in results.chunks(2) {
        let (plus, minus) = (&pair[0], &pair[1]);
        if plus.series.coefficients[1].norm() < 1e-12 {
            continue;
        }
        let (b1p, b1m) = (plus.fit.coefficients[1].re, minus.fit.coefficients[1].re);
        verdicts.push(Verdict::at_least(
            format!("{}: |fitted b1| in fit errors", plus.name),
            b1p.abs() / plus.fit.errors[1],
            t.nonzero_sigmas,
        ));
        verdicts.push(Verdict::at_most(
            format!("{}: |b1(D) + b1(-D)|/|b1(D)| (sign flip)", plus.name),
            (b1p + b1m).abs() / b1p.abs(),
            t.flip_rel,
        ));
    }
    let details = json!(results
        .iter()
        .map(|c| json!({
            "case": c.name,
            "series": c.series.to_json(),
            "fit": c.fit.to_json(),
            "remainder_slope": c.slope,
        }))
        .collect::<Vec<_>>());
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details,
    })
}
