//! Lattice sums `τ⁻¹ Σ f((ℓ + offset)/τ)` against `∫ f`, with `τ = √k`.

use super::{json, sections};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use toeplab_specfun::er_pair;
use toeplab_spectral::euler_maclaurin_check;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// `bump` = (1+25x²)^{-4}, `gaussian` = e^{-x²}, `g1er` = er(x)(1 - er(x)).
    pub functions: Vec<String>,
    pub offsets: Vec<f64>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            functions: vec!["bump".into(), "gaussian".into(), "g1er".into()],
            offsets: vec![0.0, 0.5],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// `|sum - integral| / max(|integral|, 1)` at the largest τ.
    pub final_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { final_abs: 1e-12 }
    }
}

type Sample = fn(f64) -> f64;

fn function(name: &str) -> Result<(Sample, f64)> {
    fn bump(x: f64) -> f64 {
        (1.0 + 25.0 * x * x).powi(-4)
    }
    fn gaussian(x: f64) -> f64 {
        (-x * x).exp()
    }
    fn g1er(x: f64) -> f64 {
        let (t, tc) = er_pair(x);
        t * tc
    }
    match name {
        // ∫ (1 + u²)^{-4} du = 5π/16, u = 5x
        "bump" => Ok((bump, PI / 16.0)),
        "gaussian" => Ok((gaussian, PI.sqrt())),
        // er(x) = Φ(√2 x) and ∫ Φ(1 - Φ) = 1/√π
        "g1er" => Ok((g1er, 1.0 / (2.0 * PI).sqrt())),
        _ => Err(config_err(format!("parameters.functions: unknown function `{name}`"))),
    }
}

pub fn run(r: &Resolved) -> Result<Outcome> {
    let (p, t): (Params, Tolerances) = sections(r)?;
    if p.functions.is_empty() || p.offsets.is_empty() {
        return Err(config_err("parameters: functions and offsets must not be empty"));
    }
    if r.ladder.len() < 2 {
        return Err(config_err("k_ladder: the decay check needs at least two values"));
    }
    let fs = p
        .functions
        .iter()
        .map(|n| function(n).map(|f| (n.clone(), f)))
        .collect::<Result<Vec<_>>>()?;
    let taus: Vec<f64> = r.ladder.iter().map(|&k| (k as f64).sqrt()).collect();
    let mut table = Table::new(&["case", "k", "tau", "actual", "predicted", "residual"]);
    let mut verdicts = Vec::new();
    for (name, (f, integral)) in &fs {
        for &offset in &p.offsets {
            let case = format!("{name}+{offset}");
            let check = euler_maclaurin_check(f, *integral, &taus, offset).map_err(compute_err)?;
            for ((&k, &tau), (&sum, &res)) in
                r.ladder.iter().zip(&taus).zip(check.sums.iter().zip(&check.residuals))
            {
                table.push(vec![
                    case.as_str().into(),
                    k.into(),
                    tau.into(),
                    sum.into(),
                    (*integral).into(),
                    res.into(),
                ]);
            }
            verdicts.push(Verdict::holds(
                format!("{case}: residual decays faster than tau^-6"),
                check.faster_than_sixth_power,
                format!("residual <= max(r0 (tau0/tau)^6, {:.1e})", check.floor),
            ));
            verdicts.push(Verdict::at_most(
                format!("{case}: residual at largest tau"),
                check.residuals.last().unwrap() / integral.abs().max(1.0),
                t.final_abs,
            ));
        }
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::Value::Null,
    })
}
