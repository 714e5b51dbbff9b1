//! `tr(T^p - T^{p+1})` on the Bargmann disk as a kernel integral against
//! the same trace from the closed-form spectrum.

use super::{json, sections, spectra};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use toeplab_kernels::{trace_gap_via_kernel, BargmannKernel, Disk, McBudget, TraceMethod, MAX_KERNEL_POWER};
use toeplab_spectral::power_trace;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Powers p; p = 1 uses radial quadrature, p >= 2 Monte-Carlo.
    pub ps: Vec<usize>,
    /// Monte-Carlo samples per (p, k).
    pub samples: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            ps: vec![1, 2],
            samples: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative error of the radial-quadrature route, every k.
    pub radial_rel: f64,
    /// Relative error of the Monte-Carlo route, every k.
    pub mc_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            radial_rel: 1e-3,
            mc_rel: 0.05,
        }
    }
}

pub fn run(r: &Resolved) -> Result<Outcome> {
    let (mut p, t): (Params, Tolerances) = sections(r)?;
    p.ps.sort_unstable();
    p.ps.dedup();
    let model = r.model();
    if !model.is_centred_bargmann_disk() {
        return Err(config_err("model: kernel-xcheck supports the centred Bargmann disk only"));
    }
    if p.ps.is_empty() || p.ps.iter().any(|&q| q == 0 || q > MAX_KERNEL_POWER) {
        return Err(config_err(format!("parameters.ps: powers must lie in 1..={MAX_KERNEL_POWER}")));
    }
    let radius = model.radius.expect("disk radius is validated");
    let disk = Disk::new(radius).map_err(compute_err)?;
    let specs = spectra(r)?;
    let seed = r.seed();
    let jobs: Vec<(usize, usize)> = p
        .ps
        .iter()
        .flat_map(|&q| (0..specs.len()).map(move |i| (q, i)))
        .collect();
    let traces = jobs
        .par_iter()
        .map(|&(q, i)| {
            let kernel = BargmannKernel::new(specs[i].k, 1).map_err(compute_err)?;
            let method = if q == 1 { TraceMethod::RadialQuadrature } else { TraceMethod::MonteCarlo };
            let budget = McBudget {
                samples: p.samples,
                seed: toeplab_fermion::rung_seed(toeplab_fermion::rung_seed(seed, q), i),
                // precision is judged by the verdict, not enforced here
                rel_tol: 1.0,
            };
            trace_gap_via_kernel(&kernel, q, &disk, method, &budget).map_err(compute_err)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["case", "k", "actual", "predicted", "ratio", "residual", "rel_error", "error"]);
    let mut worst = vec![0.0f64; p.ps.len()];
    for (&(q, i), tr) in jobs.iter().zip(&traces) {
        let spectral = power_trace(&specs[i], q as f64, 1.0);
        let label = match tr.method {
            TraceMethod::RadialQuadrature => "radial",
            TraceMethod::MonteCarlo => "monte-carlo",
        };
        let rel = (tr.value - spectral).abs() / spectral;
        let slot = p.ps.iter().position(|&x| x == q).unwrap();
        worst[slot] = worst[slot].max(rel);
        table.push(vec![
            format!("p={q} {label}").into(),
            specs[i].k.into(),
            tr.value.into(),
            spectral.into(),
            (tr.value / spectral).into(),
            (tr.value - spectral).into(),
            rel.into(),
            tr.error.into(),
        ]);
    }
    let verdicts = p
        .ps
        .iter()
        .zip(&worst)
        .map(|(&q, &w)| {
            let (label, tol) = if q == 1 { ("radial", t.radial_rel) } else { ("monte-carlo", t.mc_rel) };
            Verdict::at_most(format!("p={q} {label}: max relative error over the ladder"), w, tol)
        })
        .collect();
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::Value::Null,
    })
}
