//! Eigenvalue counts of truncated Fourier Toeplitz matrices of arcs.

use super::{json, sections};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use toeplab_models::{arc_boundary_points, fourier_interval_matrix, hermitian_eigenvalues, CircleArc};
use toeplab_spectral::fourier_count_law;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Disjoint arcs `[start, length]` of ℝ/2πℤ.
    pub arcs: Vec<[f64; 2]>,
    pub interval: [f64; 2],
}

impl Default for Params {
    fn default() -> Self {
        Self {
            arcs: vec![[0.0, PI]],
            interval: [0.1, 0.9],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative deviation from the logarithmic law at the largest k.
    pub final_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { final_rel: 0.25 }
    }
}

pub fn run(r: &Resolved) -> Result<Outcome> {
    let (p, t): (Params, Tolerances) = sections(r)?;
    let [a, b] = p.interval;
    if !(0.0 < a && a < b && b < 1.0) {
        return Err(config_err(format!("parameters.interval: need 0 < a < b < 1, got [{a}, {b}]")));
    }
    if p.arcs.is_empty() {
        return Err(config_err("parameters.arcs: must not be empty"));
    }
    let arcs: Vec<CircleArc> = p.arcs.iter().map(|&[s, l]| CircleArc::new(s, l)).collect();
    // validates overlap and lengths before any work
    fourier_interval_matrix(1, &arcs).map_err(|e| config_err(format!("parameters.arcs: {e}")))?;
    let points = arc_boundary_points(&arcs);
    if points == 0 {
        return Err(config_err("parameters.arcs: the arcs cover the circle, so there is no boundary"));
    }
    if r.ladder.contains(&1) {
        return Err(config_err("k_ladder: the logarithmic law needs k >= 2"));
    }
    let rows = r
        .ladder
        .par_iter()
        .map(|&k| {
            let m = fourier_interval_matrix(k as usize, &arcs).map_err(compute_err)?;
            let ev = hermitian_eigenvalues(&m).map_err(compute_err)?;
            let count = ev.iter().filter(|&&l| a <= l && l <= b).count() as f64;
            let law = fourier_count_law(k, points, a, b).map_err(compute_err)?;
            Ok((k, count, law))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["case", "k", "actual", "predicted", "ratio", "residual", "rel_error"]);
    let case = format!("[{a};{b}]");
    for &(k, count, law) in &rows {
        table.push(vec![
            case.as_str().into(),
            k.into(),
            count.into(),
            law.into(),
            (count / law).into(),
            (count - law).into(),
            ((count - law).abs() / law).into(),
        ]);
    }
    let last = rows.last().expect("non-empty ladder");
    Ok(Outcome {
        table,
        verdicts: vec![Verdict::at_most(
            "relative deviation from the log law at largest k",
            (last.1 - last.2).abs() / last.2,
            t.final_rel,
        )],
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::json!({ "boundary_points": points }),
    })
}
