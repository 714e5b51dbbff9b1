//! The Bargmann-space Bergman kernel and its cyclic products.
//!
//! Conventions: weight `e^{-k|z|²}` per complex coordinate, measure
//! `μ = Π 2 dx_j dy_j`, so `Π_k(z, w) = (k/2π)^n exp(k Σ (z_j w̄_j - |z_j|²/2 - |w_j|²/2))`
//! and `|Π_k(z, w)| = (k/2π)^n e^{-k|z-w|²/2}`. Riemannian distances are
//! `√2` times Euclidean ones, so in the metric this is `e^{-k d(x,y)²/4}`.

use crate::error::{KernelError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Ratio of Riemannian to Euclidean lengths on the Bargmann plane.
pub const METRIC_SCALE: f64 = std::f64::consts::SQRT_2;

/// A point of `ℂⁿ`.
pub type Point = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannKernel {
    pub k: u32,
    pub n: usize,
}

impl BargmannKernel {
    pub fn new(k: u32, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(KernelError::Precondition("k and n must be positive".into()));
        }
        Ok(Self { k, n })
    }

    pub fn kf(&self) -> f64 {
        self.k as f64
    }

    /// `Π_k(x, x) = (k/2π)^n`.
    pub fn diagonal(&self) -> f64 {
        (self.kf() / (2.0 * PI)).powi(self.n as i32)
    }

    fn check(&self, x: &[Complex64]) {
        assert_eq!(x.len(), self.n, "point dimension");
    }

    /// `ln |Π_k(x, y)|`.
    pub fn log_amplitude(&self, x: &[Complex64], y: &[Complex64]) -> f64 {
        self.check(x);
        self.check(y);
        let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum();
        self.n as f64 * (self.kf() / (2.0 * PI)).ln() - 0.5 * self.kf() * d2
    }

    /// `arg Π_k(x, y) = k Σ Im(x_j ȳ_j)`.
    pub fn phase(&self, x: &[Complex64], y: &[Complex64]) -> f64 {
        self.kf() * x.iter().zip(y).map(|(a, b)| (a * b.conj()).im).sum::<f64>()
    }

    pub fn eval(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        Complex64::from_polar(self.log_amplitude(x, y).exp(), self.phase(x, y))
    }

    pub fn abs(&self, x: &[Complex64], y: &[Complex64]) -> f64 {
        self.log_amplitude(x, y).exp()
    }
}

/// `Π_p(x_1, …, x_p) = Π(x_1, x_2) Π(x_2, x_3) ⋯ Π(x_p, x_1)`, kept as a
/// log-amplitude and a summed phase so large `k` neither under- nor
/// overflows.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicProduct {
    pub points: Vec<Point>,
    pub log_amplitude: f64,
    pub phase: f64,
}

impl CyclicProduct {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.log_amplitude.exp(), self.phase)
    }
}

/// The metric-contracted cyclic product. For one point this is `Π(x, x)`.
pub fn cyclic_kernel(kernel: &BargmannKernel, points: &[Point]) -> Result<CyclicProduct> {
    if points.is_empty() {
        return Err(KernelError::Precondition("need at least one point".into()));
    }
    if points.iter().any(|x| x.len() != kernel.n) {
        return Err(KernelError::Precondition(format!(
            "points must lie in ℂ^{}",
            kernel.n
        )));
    }
    let p = points.len();
    let mut log_amplitude = 0.0;
    let mut phase = 0.0;
    for i in 0..p {
        let (x, y) = (&points[i], &points[(i + 1) % p]);
        log_amplitude += kernel.log_amplitude(x, y);
        phase += kernel.phase(x, y);
    }
    Ok(CyclicProduct {
        points: points.to_vec(),
        log_amplitude,
        phase,
    })
}

/// Fit of `ln|Π_k(x,y)| = a ln k + b - k d(x,y)²/C` over a ladder of `k`
/// and a set of point pairs (`d` Riemannian).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayProfile {
    /// Fitted power of `k` in the prefactor (`n` for the Bargmann model).
    pub prefactor_power: f64,
    /// Fitted `b` (`-n ln 2π` exactly).
    pub log_prefactor: f64,
    /// Fitted `C` (4 exactly).
    pub decay_constant: f64,
    /// Largest deviation of a sample from the fitted linear law.
    pub max_residual: f64,
    pub samples: usize,
}

pub fn kernel_decay_profile(
    n: usize,
    ks: &[u32],
    pairs: &[(Point, Point)],
) -> Result<DecayProfile> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &k in ks {
        let kernel = BargmannKernel::new(k, n)?;
        for (x, y) in pairs {
            if x.len() != n || y.len() != n {
                return Err(KernelError::Precondition(format!("points must lie in ℂ^{n}")));
            }
            let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>()
                * METRIC_SCALE
                * METRIC_SCALE;
            rows.push([(k as f64).ln(), 1.0, -(k as f64) * d2]);
            rhs.push(kernel.log_amplitude(x, y));
        }
    }
    let m = rows.len();
    let a = nalgebra::DMatrix::from_fn(m, 3, |i, j| rows[i][j]);
    let b = nalgebra::DVector::from_vec(rhs);
    let has_offdiagonal = rows.iter().any(|r| r[2] != 0.0);
    let distinct_k = {
        let mut v: Vec<u32> = ks.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    if m < 3 || distinct_k < 2 || !has_offdiagonal {
        return Err(KernelError::Precondition(
            "need two distinct k and at least one off-diagonal pair".into(),
        ));
    }
    let sol = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| KernelError::Precondition(e.to_string()))?;
    let residual = &a * &sol - &b;
    Ok(DecayProfile {
        prefactor_power: sol[0],
        log_prefactor: sol[1],
        decay_constant: 1.0 / sol[2],
        max_residual: residual.amax(),
        samples: m,
    })
}
