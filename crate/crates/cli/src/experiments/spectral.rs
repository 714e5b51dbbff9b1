//! Experiments on a single spectrum per ladder rung: counts, traces,
//! entropy, cumulants and the cumulant generating function.

use super::{json, named_function, non_increasing, sections, spectra};
use crate::config::{compute_err, config_err, Resolved, Result};
use crate::report::{Cell, Outcome, Table, Verdict};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use toeplab_models::Spectrum;
use toeplab_specfun::{integral_i, Fn01, QuadratureSpec};
use toeplab_spectral as sp;

const COLUMNS: &[&str] = &["case", "k", "actual", "predicted", "ratio", "residual", "rel_error"];

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NoParams {}

fn rel(actual: f64, predicted: f64) -> f64 {
    (actual - predicted).abs() / predicted.abs()
}

fn row(case: &str, k: u32, actual: f64, predicted: f64) -> Vec<Cell> {
    vec![
        case.into(),
        k.into(),
        actual.into(),
        predicted.into(),
        (actual / predicted).into(),
        (actual - predicted).into(),
        rel(actual, predicted).into(),
    ]
}

fn scale(s: &Spectrum) -> f64 {
    sp::boundary_scale(s.k, s.complex_dim, s.domain.boundary_volume)
}

fn check_boundary(specs: &[Spectrum]) -> Result<()> {
    if specs.iter().any(|s| s.domain.boundary_volume <= 0.0) {
        return Err(config_err(
            "model: the domain has no boundary, so there is no boundary law to test",
        ));
    }
    Ok(())
}

/// Final-rung accuracy and ladder trend verdicts for every case of a
/// `COLUMNS` table.
fn convergence_verdicts(table: &Table, cases: &[String], final_rel: f64, floor: f64) -> Vec<Verdict> {
    let mut out = Vec::new();
    for case in cases {
        let errs = table.values(case, "rel_error");
        if let Some(&last) = errs.last() {
            out.push(Verdict::at_most(format!("{case}: relative error at largest k"), last, final_rel));
        }
        if errs.len() > 1 {
            out.push(Verdict::holds(
                format!("{case}: relative error non-increasing along the ladder"),
                non_increasing(&errs, floor),
                format!("non-increasing unless below {floor}"),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CountParams {
    pub intervals: Vec<[f64; 2]>,
}

impl Default for CountParams {
    fn default() -> Self {
        Self {
            intervals: vec![[0.2, 0.8], [0.1, 0.5]],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CountTolerances {
    /// Relative error of the count at the largest k.
    pub final_rel: f64,
}

impl Default for CountTolerances {
    fn default() -> Self {
        Self { final_rel: 0.05 }
    }
}

/// Counts are integers, so the plain relative error oscillates at the
/// one-eigenvalue level. The trend verdict uses `(|count - pred| + 1)/pred`,
/// the error allowing for that rounding.
pub fn weyl_count(r: &Resolved) -> Result<Outcome> {
    let (p, t): (CountParams, CountTolerances) = sections(r)?;
    if p.intervals.is_empty() {
        return Err(config_err("parameters.intervals: must not be empty"));
    }
    for &[a, b] in &p.intervals {
        if !(0.0 < a && a < b && b < 1.0) {
            return Err(config_err(format!("parameters.intervals: need 0 < a < b < 1, got [{a}, {b}]")));
        }
    }
    let specs = spectra(r)?;
    check_boundary(&specs)?;
    let mut columns = COLUMNS.to_vec();
    columns.push("envelope");
    let mut table = Table::new(&columns);
    let cases: Vec<String> = p.intervals.iter().map(|[a, b]| format!("[{a};{b}]")).collect();
    for (case, &[a, b]) in cases.iter().zip(&p.intervals) {
        for s in &specs {
            let count = sp::count_eigenvalues(s, a, b).map_err(compute_err)? as f64;
            let pred = sp::weyl_count(s.k, s.complex_dim, s.domain.boundary_volume, a, b)
                .map_err(compute_err)?;
            let mut cells = row(case, s.k, count, pred);
            cells.push((((count - pred).abs() + 1.0) / pred).into());
            table.push(cells);
        }
    }
    let mut verdicts = Vec::new();
    for case in &cases {
        let errs = table.values(case, "rel_error");
        let env = table.values(case, "envelope");
        verdicts.push(Verdict::at_most(
            format!("{case}: relative count error at largest k"),
            *errs.last().unwrap(),
            t.final_rel,
        ));
        if env.len() > 1 {
            verdicts.push(Verdict::holds(
                format!("{case}: error envelope (|count - pred| + 1)/pred non-increasing"),
                non_increasing(&env, 0.0),
                "non-increasing",
            ));
        }
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: Value::Null,
    })
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceParams {
    /// `entropy`, `P<l>`, `g<p>` (x^p - x^{p+1}) or `h<p>` ((x(1-x))^p).
    pub functions: Vec<String>,
}

impl Default for TraceParams {
    fn default() -> Self {
        Self {
            functions: vec!["P2".into(), "g2".into(), "h0.5".into()],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceTolerances {
    pub final_rel: f64,
    /// Optional bound on |actual - predicted| at every k.
    pub abs_residual: Option<f64>,
    /// Relative errors below this count as converged in the trend check.
    pub floor: f64,
}

impl Default for TraceTolerances {
    fn default() -> Self {
        Self {
            final_rel: 0.03,
            abs_residual: None,
            floor: 1e-9,
        }
    }
}

fn trace_table(specs: &[Spectrum], cases: &[(String, Fn01)]) -> Result<Table> {
    let q = QuadratureSpec::default();
    let mut table = Table::new(COLUMNS);
    for (name, f) in cases {
        let i_f = integral_i(f, &q).map_err(compute_err)?;
        for s in specs {
            let actual = sp::trace_functional(s, f).map_err(compute_err)?;
            table.push(row(name, s.k, actual, scale(s) * i_f));
        }
    }
    Ok(table)
}

pub fn weyl_trace(r: &Resolved) -> Result<Outcome> {
    let (p, t): (TraceParams, TraceTolerances) = sections(r)?;
    if p.functions.is_empty() {
        return Err(config_err("parameters.functions: must not be empty"));
    }
    let cases = p
        .functions
        .iter()
        .map(|n| Ok((n.clone(), named_function(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let specs = spectra(r)?;
    check_boundary(&specs)?;
    let table = trace_table(&specs, &cases)?;
    let names: Vec<String> = p.functions.clone();
    let mut verdicts = convergence_verdicts(&table, &names, t.final_rel, t.floor);
    if let Some(limit) = t.abs_residual {
        for case in &names {
            let worst = table
                .values(case, "residual")
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            verdicts.push(Verdict::at_most(format!("{case}: |actual - predicted| over the ladder"), worst, limit));
        }
    }
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: Value::Null,
    })
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntropyTolerances {
    pub final_rel: f64,
    pub floor: f64,
}

impl Default for EntropyTolerances {
    fn default() -> Self {
        Self {
            final_rel: 0.02,
            floor: 1e-9,
        }
    }
}

pub fn entropy(r: &Resolved) -> Result<Outcome> {
    let (p, t): (NoParams, EntropyTolerances) = sections(r)?;
    let specs = spectra(r)?;
    check_boundary(&specs)?;
    let i_f = integral_i(&Fn01::entropy(), &QuadratureSpec::default()).map_err(compute_err)?;
    let mut table = Table::new(COLUMNS);
    for s in &specs {
        table.push(row("entropy", s.k, sp::entanglement_entropy(s), scale(s) * i_f));
    }
    let verdicts = convergence_verdicts(&table, &["entropy".to_string()], t.final_rel, t.floor);
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: Value::Null,
    })
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CumulantTolerances {
    /// κ₂ against the boundary law at the largest k.
    pub k2_rel: f64,
    /// κ₄ against the boundary law at the largest k.
    pub k4_rel: f64,
    /// Bound on `|κ₃|/κ₂ · k^{1/4}` over the ladder.
    pub k3_constant: f64,
    /// κ₂ from `P₂` against `Σλ - Σλ²`.
    pub k2_identity: f64,
}

impl Default for CumulantTolerances {
    fn default() -> Self {
        Self {
            k2_rel: 0.03,
            k4_rel: 0.10,
            k3_constant: 1.0,
            k2_identity: 1e-12,
        }
    }
}

pub fn cumulants(r: &Resolved) -> Result<Outcome> {
    let (p, t): (NoParams, CumulantTolerances) = sections(r)?;
    let specs = spectra(r)?;
    check_boundary(&specs)?;
    let q = QuadratureSpec::default();
    let i2 = integral_i(&Fn01::p2(), &q).map_err(compute_err)?;
    let i4 = integral_i(&sp::cumulant_function(4), &q).map_err(compute_err)?;
    let mut table = Table::new(COLUMNS);
    let mut identity: f64 = 0.0;
    let mut k3_scaled: f64 = 0.0;
    for s in &specs {
        let k2 = sp::cumulant(s, 2).map_err(compute_err)?;
        let k3 = sp::cumulant(s, 3).map_err(compute_err)?;
        let k4 = sp::cumulant(s, 4).map_err(compute_err)?;
        let direct = sp::power_trace(s, 1.0, 0.0) - sp::power_trace(s, 2.0, 0.0);
        identity = identity.max(rel(direct, k2));
        table.push(row("kappa2", s.k, k2, scale(s) * i2));
        table.push(row("kappa4", s.k, k4, scale(s) * i4));
        let ratio = k3.abs() / k2;
        k3_scaled = k3_scaled.max(ratio * (s.k as f64).powf(0.25));
        table.push(vec![
            "kappa3".into(),
            s.k.into(),
            k3.into(),
            Cell::Empty,
            ratio.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    let last = |case: &str| *table.values(case, "rel_error").last().unwrap();
    let verdicts = vec![
        Verdict::at_most("kappa2: relative error at largest k", last("kappa2"), t.k2_rel),
        Verdict::at_most("kappa4: relative error at largest k", last("kappa4"), t.k4_rel),
        Verdict::at_most("kappa3: max |kappa3|/kappa2 * k^(1/4) over the ladder", k3_scaled, t.k3_constant),
        Verdict::at_most("kappa2 = tr T - tr T^2 (relative)", identity, t.k2_identity),
    ];
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: Value::Null,
    })
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CgfParams {
    /// Real points t; the cgf is analytic for |Im t| < π.
    pub ts: Vec<f64>,
}

impl Default for CgfParams {
    fn default() -> Self {
        Self {
            ts: vec![-1.0, -0.5, 0.5, 1.0],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CgfTolerances {
    pub final_rel: f64,
    pub floor: f64,
    /// `|cgf'(0)| / κ₂` by central differences (the fluctuation is centred).
    pub centred: f64,
}

impl Default for CgfTolerances {
    fn default() -> Self {
        Self {
            final_rel: 0.02,
            floor: 1e-9,
            centred: 1e-6,
        }
    }
}

pub fn cgf(r: &Resolved) -> Result<Outcome> {
    let (p, t): (CgfParams, CgfTolerances) = sections(r)?;
    if p.ts.is_empty() || p.ts.iter().any(|&x| x == 0.0 || !x.is_finite()) {
        return Err(config_err("parameters.ts: need a non-empty list of finite, nonzero t"));
    }
    let specs = spectra(r)?;
    check_boundary(&specs)?;
    let q = QuadratureSpec::default();
    let mut table = Table::new(COLUMNS);
    let cases: Vec<String> = p.ts.iter().map(|x| format!("t={x}")).collect();
    for (case, &x) in cases.iter().zip(&p.ts) {
        let i_f = integral_i(&sp::cgf_function(x), &q).map_err(compute_err)?;
        for s in &specs {
            let v = sp::cgf(s, Complex64::new(x, 0.0)).map_err(compute_err)?;
            table.push(row(case, s.k, v.re, scale(s) * i_f));
        }
    }
    let mut verdicts = convergence_verdicts(&table, &cases, t.final_rel, t.floor);
    let h = 1e-4;
    let mut slope: f64 = 0.0;
    for s in &specs {
        let plus = sp::cgf(s, Complex64::new(h, 0.0)).map_err(compute_err)?.re;
        let minus = sp::cgf(s, Complex64::new(-h, 0.0)).map_err(compute_err)?.re;
        let k2 = sp::cumulant(s, 2).map_err(compute_err)?;
        slope = slope.max(((plus - minus) / (2.0 * h)).abs() / k2);
    }
    verdicts.push(Verdict::at_most("cgf'(0)/kappa2 (centred fluctuation)", slope, t.centred));
    Ok(Outcome {
        table,
        verdicts,
        parameters: json(&p),
        tolerances: json(&t),
        details: Value::Null,
    })
}
