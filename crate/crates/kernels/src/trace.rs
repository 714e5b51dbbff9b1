//! Kernel-integral traces on a disk `A = {|z - c| < R}` in the Bargmann
//! plane (`n = 1`):
//! `tr T_A^p = ∫_{A^p} Π_p` and `tr(T_A^p - T_A^{p+1}) = ∫_{A^p × A^c} Π_{p+1}`.

use crate::error::{KernelError, Result};
use crate::kernel::BargmannKernel;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::PI;
use toeplab_specfun::quad;

/// Largest `p` accepted (the integrals live in `ℝ^{2(p+1)}`).
pub const MAX_KERNEL_POWER: usize = 3;
/// Samples per independently seeded block.
pub const MC_BLOCK: usize = 4096;
/// Scale, in units of `k^{-1/2}`, of the half-normal law used for the
/// distance of the gap integral's base point from `∂A`. The integrand decays
/// like `e^{-k s²}`, so this is slightly wider than the target.
pub const TUBE_SCALE: f64 = 0.85;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(KernelError::Precondition("radius must be positive".into()));
        }
        Ok(Self {
            center: Complex64::new(0.0, 0.0),
            radius,
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Lebesgue area `πR²` (the `μ`-area is twice this).
    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// `|A ∩ (A + v)|` for `|v| = ρ`.
    pub fn covariogram(&self, rho: f64) -> f64 {
        let r = self.radius;
        if rho >= 2.0 * r {
            return 0.0;
        }
        2.0 * r * r * (rho / (2.0 * r)).acos() - 0.5 * rho * (4.0 * r * r - rho * rho).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMethod {
    /// One-dimensional integral over `|x - y|` (p = 1 gaps, p ≤ 2 powers).
    RadialQuadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McBudget {
    pub samples: usize,
    pub seed: u64,
    /// Fail if the relative standard error exceeds this.
    pub rel_tol: f64,
}

impl Default for McBudget {
    fn default() -> Self {
        Self {
            samples: 1 << 20,
            seed: 0x6b65726e,
            rel_tol: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTrace {
    pub p: usize,
    pub k: u32,
    pub value: f64,
    /// Quadrature error estimate or Monte-Carlo standard error.
    pub error: f64,
    pub method: TraceMethod,
    pub evaluations: usize,
}

fn check(kernel: &BargmannKernel, p: usize) -> Result<()> {
    if kernel.n != 1 {
        return Err(KernelError::Unsupported(
            "kernel-route traces are implemented for n = 1".into(),
        ));
    }
    if p == 0 || p > MAX_KERNEL_POWER {
        return Err(KernelError::Precondition(format!(
            "p must lie in 1..={MAX_KERNEL_POWER}, got {p}"
        )));
    }
    Ok(())
}

/// `∫ f(ρ) 2πρ w(ρ) dρ` for the pair density `|Π|² = (k/2π)² e^{-kρ²}`,
/// times 4 for `μ × μ`.
fn radial<W: Fn(f64) -> f64>(k: f64, upper: Option<f64>, w: W) -> Result<(f64, f64, usize)> {
    let c = 4.0 * (k / (2.0 * PI)).powi(2) * 2.0 * PI;
    let f = |rho: f64| c * rho * (-k * rho * rho).exp() * w(rho);
    let (tol_abs, tol_rel, max_sub) = (1e-300, 1e-13, 2000);
    let scale = 1.0 / k.sqrt();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    // split at the Gaussian scale so the adaptive rule sees the peak
    let mut breaks = vec![0.0, 2.0 * scale, 8.0 * scale];
    if let Some(u) = upper {
        breaks.retain(|&b| b < u);
        breaks.push(u);
    }
    for w in breaks.windows(2) {
        let e = quad::gauss_kronrod(&f, w[0], w[1], tol_abs, tol_rel, max_sub)?;
        value += e.value;
        error += e.error;
        evaluations += e.evaluations;
    }
    if upper.is_none() {
        let e = quad::gauss_kronrod_upper(&f, *breaks.last().unwrap(), tol_abs, tol_rel, max_sub)?;
        value += e.value;
        error += e.error;
        evaluations += e.evaluations;
    }
    Ok((value, error, evaluations))
}

/// `tr T_A^p` by the kernel integral `∫_{A^p} Π_p dμ^p`.
pub fn trace_power_via_kernel(
    kernel: &BargmannKernel,
    p: usize,
    disk: &Disk,
    method: TraceMethod,
    budget: &McBudget,
) -> Result<KernelTrace> {
    check(kernel, p)?;
    let k = kernel.kf();
    let done = |value, error, method, evaluations| KernelTrace {
        p,
        k: kernel.k,
        value,
        error,
        method,
        evaluations,
    };
    match (method, p) {
        // constant diagonal: (k/2π) μ(A)
        (TraceMethod::RadialQuadrature, 1) => {
            Ok(done(kernel.diagonal() * 2.0 * disk.area(), 0.0, method, 0))
        }
        (TraceMethod::RadialQuadrature, 2) => {
            let (v, e, n) = radial(k, Some(2.0 * disk.radius), |rho| disk.covariogram(rho))?;
            Ok(done(v, e, method, n))
        }
        (TraceMethod::RadialQuadrature, _) => Err(KernelError::Unsupported(format!(
            "no radial reduction of tr T_A^{p}; use Monte-Carlo"
        ))),
        (TraceMethod::MonteCarlo, _) => {
            let (v, e, n) = cyclic_monte_carlo(kernel, p, disk, Base::Disk, budget)?;
            Ok(done(v, e, method, n))
        }
    }
}

/// `tr(T_A^p - T_A^{p+1})` by `∫_{A^p × A^c} Π_{p+1} dμ^{p+1}`.
pub fn trace_gap_via_kernel(
    kernel: &BargmannKernel,
    p: usize,
    disk: &Disk,
    method: TraceMethod,
    budget: &McBudget,
) -> Result<KernelTrace> {
    check(kernel, p)?;
    let k = kernel.kf();
    match (method, p) {
        (TraceMethod::RadialQuadrature, 1) => {
            let area = disk.area();
            let (value, error, evaluations) = radial(k, None, |rho| area - disk.covariogram(rho))?;
            Ok(KernelTrace {
                p,
                k: kernel.k,
                value,
                error,
                method,
                evaluations,
            })
        }
        (TraceMethod::RadialQuadrature, _) => Err(KernelError::Unsupported(format!(
            "no radial reduction of the p = {p} gap; use Monte-Carlo"
        ))),
        (TraceMethod::MonteCarlo, _) => {
            let (value, error, evaluations) =
                cyclic_monte_carlo(kernel, p + 1, disk, Base::Tube, budget)?;
            Ok(KernelTrace {
                p,
                k: kernel.k,
                value,
                error,
                method,
                evaluations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    /// Base point uniform in `A`, every point required in `A`.
    Disk,
    /// Base point at distance `s` outside `∂A`, `s` half-normal, the other
    /// points required in `A`.
    Tube,
}

/// Monte-Carlo for `∫ Π_m(x_1, …, x_m)` over `m` points with the last one
/// as base `τ` and offsets `t_i = x_i - τ`, `i < m`.
///
/// `|Π_m| = (k/2π)^m e^{-½ tᵀPt}` with `P = k (L ⊗ I₂)`, `L` the
/// `(m-1)×(m-1)` tridiagonal matrix with 2 on and -1 off the diagonal, so
/// drawing `t` from that Gaussian leaves the weight
/// `2^m (k/2π) / m · area(base) · e^{iΦ} · 1[points in place]`.
fn cyclic_monte_carlo(
    kernel: &BargmannKernel,
    m: usize,
    disk: &Disk,
    base: Base,
    budget: &McBudget,
) -> Result<(f64, f64, usize)> {
    if budget.samples < 2 * MC_BLOCK {
        return Err(KernelError::Precondition(format!(
            "Monte-Carlo needs at least {} samples",
            2 * MC_BLOCK
        )));
    }
    let k = kernel.kf();
    let r = disk.radius;
    let sigma = TUBE_SCALE / k.sqrt();
    let offsets = m - 1;
    // Cholesky of L; offsets t = (1/√k) L^{-T} z in each real coordinate
    let chol_inv_t = if offsets > 0 {
        let l = DMatrix::from_fn(offsets, offsets, |i, j| {
            if i == j {
                2.0
            } else if i.abs_diff(j) == 1 {
                -1.0
            } else {
                0.0
            }
        });
        let c = l.cholesky().expect("L is positive definite");
        c.l().transpose().try_inverse().expect("triangular factor is invertible")
    } else {
        DMatrix::zeros(0, 0)
    };
    let scale = 2f64.powi(m as i32) * k / (2.0 * PI) / m as f64;
    let blocks = budget.samples.div_ceil(MC_BLOCK);
    let block_sums: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(b as u64);
            let count = MC_BLOCK.min(budget.samples - b * MC_BLOCK);
            let mut values = Vec::with_capacity(count);
            let mut zr = vec![0.0; offsets];
            let mut zi = vec![0.0; offsets];
            let mut pts = vec![Complex64::new(0.0, 0.0); m];
            for _ in 0..count {
                // base point and 1/density of its law
                let (rho, inv_density) = match base {
                    Base::Disk => (r * rng.random::<f64>().sqrt(), disk.area()),
                    Base::Tube => {
                        let z: f64 = rng.sample(StandardNormal);
                        let s = sigma * z.abs();
                        let half_normal = (2.0 / PI).sqrt() / sigma * (-0.5 * z * z).exp();
                        (r + s, 2.0 * PI * (r + s) / half_normal)
                    }
                };
                let tau = disk.center + Complex64::from_polar(rho, 2.0 * PI * rng.random::<f64>());
                for j in 0..offsets {
                    zr[j] = rng.sample(StandardNormal);
                    zi[j] = rng.sample(StandardNormal);
                }
                let mut inside = true;
                for i in 0..offsets {
                    let (mut a, mut b) = (0.0, 0.0);
                    for j in i..offsets {
                        a += chol_inv_t[(i, j)] * zr[j];
                        b += chol_inv_t[(i, j)] * zi[j];
                    }
                    let x = tau + Complex64::new(a, b) / k.sqrt();
                    inside &= disk.contains(x);
                    pts[i] = x;
                }
                pts[offsets] = tau;
                if !inside {
                    values.push(0.0);
                    continue;
                }
                // Φ = k Σ Im(x_i x̄_{i+1}) around the cycle
                let mut phase = 0.0;
                for i in 0..m {
                    phase += (pts[i] * pts[(i + 1) % m].conj()).im;
                }
                values.push(scale * inv_density * (k * phase).cos());
            }
            (pairwise_sum(&values), pairwise_sum(&values.iter().map(|v| v * v).collect::<Vec<_>>()))
        })
        .collect();
    let n = budget.samples as f64;
    let sums: Vec<f64> = block_sums.iter().map(|s| s.0).collect();
    let squares: Vec<f64> = block_sums.iter().map(|s| s.1).collect();
    let mean = pairwise_sum(&sums) / n;
    let var = (pairwise_sum(&squares) / n - mean * mean).max(0.0) * n / (n - 1.0);
    let se = (var / n).sqrt();
    if se > budget.rel_tol * mean.abs() {
        return Err(KernelError::Statistical {
            relative: se / mean.abs(),
            requested: budget.rel_tol,
        });
    }
    Ok((mean, se, budget.samples))
}

/// Pairwise (tree) summation; the order depends only on the length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}
