//! Conic moments `I(α, β) = ∫_D e^{-q(t)} t^α s^β dt ds`.
//!
//! The `s`-integral over each section is done in closed form and `t`
//! coordinates that only enter the Gaussian are integrated out exactly. The
//! remaining `t`-integral is done by Gauss–Kronrod when it is
//! one-dimensional and otherwise by randomized quasi-Monte-Carlo:
//! independently scrambled Sobol replicates, mapped through the Gaussian
//! `e^{-Re q}`, with `e^{-i Im q}` as a weight.

use crate::domain::ConicDomain;
use crate::error::{AsymptoticsError, Result};
use crate::phase::QuadraticForm;
use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, SQRT_2};
use toeplab_specfun::{er_inv, quad};

/// Longest scrambled Sobol sequence per replicate.
pub const SOBOL_MAX_POINTS: usize = 1 << 16;
/// Highest dimension the Sobol tables cover.
pub const SOBOL_MAX_DIM: usize = 256;
const MIN_REPLICATES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    /// Quadrature for one `t`-variable, quasi-Monte-Carlo otherwise.
    Auto,
    QuasiMonteCarlo,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentOptions {
    pub method: MomentMethod,
    /// Points of the first QMC run; the check run uses four times as many.
    pub points: usize,
    pub seed: u64,
    /// Required relative agreement of the two QMC runs.
    pub rel_tol: f64,
}

impl Default for MomentOptions {
    fn default() -> Self {
        Self {
            method: MomentMethod::Auto,
            points: 1 << 18,
            seed: 0x5eed,
            rel_tol: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: Complex64,
    /// Standard error (QMC) or quadrature error estimate.
    pub error: f64,
    pub evaluations: usize,
    pub method: MomentMethod,
}

/// `∫_D e^{-q(t)} t^α s^β dt ds`.
pub fn conic_moment(
    alpha: &[u32],
    beta: &[u32],
    q: &QuadraticForm,
    domain: &ConicDomain,
    options: &MomentOptions,
) -> Result<MomentEstimate> {
    if alpha.len() != domain.t_dim || q.dim() != domain.t_dim {
        return Err(AsymptoticsError::Precondition(format!(
            "α has {} entries, q acts on {} variables, D has {} t-variables",
            alpha.len(),
            q.dim(),
            domain.t_dim
        )));
    }
    // unbounded sections show up as errors from section_moment, but only
    // where the sampler lands; probe a fixed set of directions up front
    if domain.section_constant(64, 1)?.is_none() {
        return Err(AsymptoticsError::Precondition(
            "domain has unbounded sections (need |s| ≤ C|t|)".into(),
        ));
    }
    let reduced = marginalize(alpha, q, domain)?;
    let method = match options.method {
        MomentMethod::Auto if reduced.domain.t_dim == 1 => MomentMethod::Quadrature,
        MomentMethod::Auto => MomentMethod::QuasiMonteCarlo,
        m => m,
    };
    let m = match method {
        MomentMethod::Quadrature => moment_quadrature(&reduced.alpha, beta, &reduced.q, &reduced.domain)?,
        _ => moment_qmc(&reduced.alpha, beta, &reduced.q, &reduced.domain, options)?,
    };
    Ok(MomentEstimate {
        value: m.value * reduced.factor,
        error: m.error * reduced.factor.norm(),
        ..m
    })
}

/// A moment problem after the Gaussian integration of inactive variables.
struct Reduced {
    alpha: Vec<u32>,
    q: QuadraticForm,
    domain: ConicDomain,
    factor: Complex64,
}

/// Integrates out, in closed form, every `t` coordinate that neither the
/// monomial nor any constraint of `D` involves.
///
/// Eliminating a variable with pivot `d` multiplies by `√(2π/d)` and leaves
/// the Schur complement; Schur complements of a matrix with positive
/// definite real part keep that property, so `Re d > 0` and the principal
/// square root is the right branch.
fn marginalize(alpha: &[u32], q: &QuadraticForm, domain: &ConicDomain) -> Result<Reduced> {
    let d = domain.t_dim;
    let active: Vec<bool> = (0..d)
        .map(|c| alpha[c] > 0 || domain.constraints.iter().any(|k| k.t_coeffs[c] != 0.0))
        .collect();
    let mut keep: Vec<usize> = (0..d).filter(|&c| active[c]).collect();
    if keep.len() == d {
        return Ok(Reduced {
            alpha: alpha.to_vec(),
            q: q.clone(),
            domain: domain.clone(),
            factor: Complex64::new(1.0, 0.0),
        });
    }
    if keep.is_empty() {
        // the moment factorises completely; keep one variable for the sampler
        keep.push(0);
    }
    let mut m = q.matrix.clone();
    let mut alive: Vec<usize> = (0..d).collect();
    let mut factor = Complex64::new(1.0, 0.0);
    for v in (0..d).filter(|c| !keep.contains(c)) {
        let pivot = m[(v, v)];
        if !(pivot.re > 0.0) {
            return Err(AsymptoticsError::Precondition(format!(
                "pivot {pivot} without positive real part while integrating out t{v}"
            )));
        }
        factor *= (Complex64::from(2.0 * PI) / pivot).sqrt();
        alive.retain(|&c| c != v);
        for &i in &alive {
            for &j in &alive {
                let update = m[(i, v)] * m[(v, j)] / pivot;
                m[(i, j)] -= update;
            }
        }
    }
    let n = keep.len();
    let reduced_q = QuadraticForm::new(DMatrix::from_fn(n, n, |i, j| m[(keep[i], keep[j])]))?;
    let constraints = domain
        .constraints
        .iter()
        .map(|c| crate::domain::LinearConstraint {
            t_coeffs: keep.iter().map(|&i| c.t_coeffs[i]).collect(),
            s_coeffs: c.s_coeffs.clone(),
        })
        .collect();
    Ok(Reduced {
        alpha: keep.iter().map(|&i| alpha[i]).collect(),
        q: reduced_q,
        domain: ConicDomain {
            t_dim: n,
            s_dim: domain.s_dim,
            kind: domain.kind,
            constraints,
        },
        factor,
    })
}

fn monomial(t: &[f64], alpha: &[u32]) -> f64 {
    t.iter().zip(alpha).map(|(&x, &a)| x.powi(a as i32)).product()
}

fn moment_quadrature(
    alpha: &[u32],
    beta: &[u32],
    q: &QuadraticForm,
    domain: &ConicDomain,
) -> Result<MomentEstimate> {
    if domain.t_dim != 1 {
        return Err(AsymptoticsError::Unsupported(format!(
            "quadrature moments need one t-variable, got {}",
            domain.t_dim
        )));
    }
    let c = q.matrix[(0, 0)];
    let a = alpha[0] as i32;
    let failure = std::sync::Mutex::new(None);
    let f = |t: f64| -> Complex64 {
        match domain.section_moment(&[t], beta) {
            Ok(v) if v != 0.0 => (-0.5 * c * t * t).exp() * (t.powi(a) * v),
            Ok(_) => Complex64::new(0.0, 0.0),
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let (abs_tol, rel_tol, max_sub) = (1e-16, 1e-13, 4000);
    let upper = quad::gauss_kronrod_upper(f, 0.0, abs_tol, rel_tol, max_sub)?;
    let lower = quad::gauss_kronrod_lower(f, 0.0, abs_tol, rel_tol, max_sub)?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(MomentEstimate {
        value: upper.value + lower.value,
        error: upper.error + lower.error,
        evaluations: upper.evaluations + lower.evaluations,
        method: MomentMethod::Quadrature,
    })
}

/// Gaussian sampler for `e^{-Re q}`: `t = A z` with `A = L^{-T}`,
/// `Re Q = L Lᵀ`, and the normalising mass `(2π)^{d/2} det(Re Q)^{-1/2}`.
pub(crate) struct GaussianMap {
    pub map: DMatrix<f64>,
    pub mass: f64,
}

impl GaussianMap {
    pub fn new(q: &QuadraticForm) -> Result<Self> {
        let d = q.dim();
        let chol = Cholesky::new(q.real_part()).ok_or_else(|| {
            AsymptoticsError::Precondition("Re q is not positive definite".into())
        })?;
        let l = chol.l();
        let det_sqrt: f64 = (0..d).map(|i| l[(i, i)]).product();
        let lt_inv = l
            .transpose()
            .try_inverse()
            .ok_or_else(|| AsymptoticsError::Precondition("singular Cholesky factor".into()))?;
        Ok(Self {
            map: lt_inv,
            mass: (2.0 * PI).powf(d as f64 / 2.0) / det_sqrt,
        })
    }
}

/// Replicate seeds for a run, from a ChaCha stream keyed by the user seed.
fn replicate_seeds(seed: u64, tag: u64, count: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    (0..count).map(|_| rng.next_u32()).collect()
}

/// Mean of `w(t)` under the Gaussian `e^{-Re q}` (normalised), with its
/// standard error, by randomized QMC over `points` samples.
pub(crate) fn rqmc_mean<W>(
    gauss: &GaussianMap,
    weight: &W,
    points: usize,
    seed: u64,
    tag: u64,
) -> Result<(Complex64, f64)>
where
    W: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let d = gauss.map.nrows();
    if d > SOBOL_MAX_DIM {
        return Err(AsymptoticsError::Unsupported(format!(
            "quasi-Monte-Carlo covers at most {SOBOL_MAX_DIM} dimensions, got {d}"
        )));
    }
    let replicates = MIN_REPLICATES.max(points.div_ceil(SOBOL_MAX_POINTS));
    let per = (points / replicates).max(1);
    let seeds = replicate_seeds(seed, tag, replicates);
    // sobol_burley returns multiples of 2^-24 in [0, 1); shift to the cell middle
    let half_cell = 0.5 / (1u32 << 24) as f64;
    let means = seeds
        .par_iter()
        .map(|&s| {
            let mut z = vec![0.0; d];
            let mut t = vec![0.0; d];
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..per {
                for (j, zj) in z.iter_mut().enumerate() {
                    let u = sobol_burley::sample(i as u32, j as u32, s) as f64 + half_cell;
                    *zj = SQRT_2 * er_inv(u)?;
                }
                for (r, tr) in t.iter_mut().enumerate() {
                    *tr = (r..d).map(|c| gauss.map[(r, c)] * z[c]).sum();
                }
                acc += weight(&t)?;
            }
            Ok(acc / per as f64)
        })
        .collect::<Result<Vec<Complex64>>>()?;
    let r = means.len() as f64;
    let mean: Complex64 = means.iter().sum::<Complex64>() / r;
    let var = means.iter().map(|m| (m - mean).norm_sqr()).sum::<f64>() / (r - 1.0);
    Ok((mean, (var / r).sqrt()))
}

/// Two RQMC runs of sizes `N` and `4N` with independent scrambles; the
/// larger is returned once they agree.
pub(crate) fn rqmc_checked<W>(
    gauss: &GaussianMap,
    weight: &W,
    options: &MomentOptions,
    what: &str,
) -> Result<(Complex64, f64, usize)>
where
    W: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let n = options.points.max(MIN_REPLICATES);
    let (e1, s1) = rqmc_mean(gauss, weight, n, options.seed, 1)?;
    let (e2, s2) = rqmc_mean(gauss, weight, 4 * n, options.seed, 2)?;
    let diff = (e1 - e2).norm();
    let relative_ok = diff <= options.rel_tol * e2.norm();
    // a value that is zero within its own error cannot meet a relative test
    let zero_ok = e2.norm() <= 3.0 * s2 && diff <= 3.0 * s1.hypot(s2);
    if !(relative_ok || zero_ok) {
        return Err(AsymptoticsError::NonConvergence {
            what: what.to_string(),
            first: e1.re,
            second: e2.re,
            tolerance: options.rel_tol,
        });
    }
    Ok((e2, s2, 5 * n))
}

fn moment_qmc(
    alpha: &[u32],
    beta: &[u32],
    q: &QuadraticForm,
    domain: &ConicDomain,
    options: &MomentOptions,
) -> Result<MomentEstimate> {
    let gauss = GaussianMap::new(q)?;
    let im = q.imag_part();
    let has_im = im.iter().any(|&v| v != 0.0);
    let d = q.dim();
    let weight = |t: &[f64]| -> Result<Complex64> {
        let v = domain.section_moment(t, beta)?;
        if v == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w = v * monomial(t, alpha);
        if !has_im {
            return Ok(w.into());
        }
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                s += im[(i, j)] * t[i] * t[j];
            }
        }
        Ok(Complex64::from_polar(w, -0.5 * s))
    };
    let (mean, se, evaluations) =
        rqmc_checked(&gauss, &weight, options, &format!("moment α={alpha:?} β={beta:?}"))?;
    Ok(MomentEstimate {
        value: mean * gauss.mass,
        error: se * gauss.mass,
        evaluations,
        method: MomentMethod::QuasiMonteCarlo,
    })
}
