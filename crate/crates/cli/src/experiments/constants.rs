//! `C_{p,n}` by the one-dimensional route and by the Gaussian conic route.

use super::{json, sections};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Outcome, Table, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use toeplab_asymptotics::{universal_constant_route_a, universal_constant_route_b, MomentOptions};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    pub ps: Vec<u32>,
    pub ns: Vec<u32>,
    /// Quasi-Monte-Carlo points per replicate run of route B.
    pub points: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            ps: vec![1, 2, 3],
            ns: vec![1, 2],
            points: MomentOptions::default().points,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Both routes of C_{1,1} against (2π)^{-3/2}; route B adds 2 standard errors.
    pub c11_rel: f64,
    /// `|2π C_{p,n+1}/C_{p,n} - 1|` for route A.
    pub lift: f64,
    /// Route agreement in route-B standard errors.
    pub agreement_sigmas: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            c11_rel: 0.005,
            lift: 1e-10,
            agreement_sigmas: 5.0,
        }
    }
}

pub fn run(r: &Resolved) -> Result<Outcome> {
    let (p, t): (Params, Tolerances) = sections(r)?;
    if p.ps.is_empty() || p.ns.is_empty() || p.ps.contains(&0) || p.ns.contains(&0) {
        return Err(config_err("parameters: ps and ns must be non-empty lists of positive integers"));
    }
    let mut ns = p.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut ps = p.ps.clone();
    ps.sort_unstable();
    ps.dedup();
    let options = MomentOptions {
        points: p.points,
        seed: r.seed(),
        ..MomentOptions::default()
    };
    let grid: Vec<(u32, u32)> = ps.iter().flat_map(|&a| ns.iter().map(move |&b| (a, b))).collect();
    let rows = grid
        .par_iter()
        .map(|&(pp, nn)| {
            let a = universal_constant_route_a(pp, nn).map_err(compute_err)?;
            let (b, err, _, _) = universal_constant_route_b(pp, nn, &options).map_err(compute_err)?;
            Ok((pp, nn, a, b, err))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["case", "p", "n", "route_a", "route_b", "route_b_error", "ratio", "rel_diff"]);
    for &(pp, nn, a, b, err) in &rows {
        table.push(vec![
            format!("C_{{{pp},{nn}}}").into(),
            pp.into(),
            nn.into(),
            a.into(),
            b.into(),
            err.into(),
            (b / a).into(),
            ((b - a).abs() / a).into(),
        ]);
    }
    let mut verdicts = Vec::new();
    let exact = (2.0 * PI).powf(-1.5);
    if let Some(&(_, _, a, b, err)) = rows.iter().find(|r| r.0 == 1 && r.1 == 1) {
        verdicts.push(Verdict::at_most("C_{1,1} route A against (2pi)^(-3/2)", (a - exact).abs() / exact, t.c11_rel));
        verdicts.push(Verdict::at_most(
            "C_{1,1} route B against (2pi)^(-3/2), plus 2 standard errors",
            ((b - exact).abs() + 2.0 * err) / exact,
            t.c11_rel,
        ));
    }
    for &(pp, nn, a, b, err) in &rows {
        verdicts.push(Verdict::at_most(
            format!("C_{{{pp},{nn}}}: |A - B| in route-B standard errors"),
            (a - b).abs() / (err + 1e-12 * a),
            t.agreement_sigmas,
        ));
    }
    for w in rows.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo.0 == hi.0 && hi.1 == lo.1 + 1 {
            verdicts.push(Verdict::at_most(
                format!("route A: 2pi C_{{{},{}}}/C_{{{},{}}} - 1", hi.0, hi.1, lo.0, lo.1),
                (2.0 * PI * hi.2 / lo.2 - 1.0).abs(),
                t.lift,
            ));
        }
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: serde_json::json!({ "exact_c11": exact }),
    })
}
