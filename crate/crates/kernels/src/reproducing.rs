//! Numerical check of `∫ Π_{p+1}(x, x_1, …, x_p) dμ(x) = Π_p(x_1, …, x_p)`.

use crate::error::{KernelError, Result};
use crate::kernel::{cyclic_kernel, BargmannKernel, Point};
use num_complex::Complex64;
use toeplab_specfun::quad::gauss_legendre;

/// Tensor Gauss–Legendre on a square of half-width `window/√k` centred at
/// the midpoint of `x_1` and `x_p`, split into `panels²` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowQuadrature {
    pub window: f64,
    pub panels: usize,
    pub order: usize,
}

impl Default for WindowQuadrature {
    fn default() -> Self {
        Self {
            window: 7.0,
            panels: 8,
            order: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproducingReport {
    /// `|∫ Π_{p+1} dμ / Π_p - 1|` per sample.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// Relative residuals of the reproducing identity for each sample tuple
/// (`p` points in `ℂ`). Integrands are normalised by `Π_p` in log space.
pub fn reproducing_check(
    kernel: &BargmannKernel,
    samples: &[Vec<Point>],
    quadrature: &WindowQuadrature,
) -> Result<ReproducingReport> {
    if kernel.n != 1 {
        return Err(KernelError::Unsupported(
            "the reproducing check integrates over ℂ (n = 1)".into(),
        ));
    }
    if quadrature.window <= 0.0 || quadrature.panels == 0 || quadrature.order == 0 {
        return Err(KernelError::Precondition("empty quadrature".into()));
    }
    let (nodes, weights) = gauss_legendre(quadrature.order);
    let half = quadrature.window / kernel.kf().sqrt();
    let cell = 2.0 * half / quadrature.panels as f64;
    let mut residuals = Vec::with_capacity(samples.len());
    for tuple in samples {
        if tuple.is_empty() {
            return Err(KernelError::Precondition("empty sample tuple".into()));
        }
        let base = cyclic_kernel(kernel, tuple)?;
        let centre = 0.5 * (tuple[0][0] + tuple[tuple.len() - 1][0]);
        let mut points: Vec<Point> = Vec::with_capacity(tuple.len() + 1);
        points.push(vec![Complex64::new(0.0, 0.0)]);
        points.extend(tuple.iter().cloned());
        let mut total = Complex64::new(0.0, 0.0);
        for px in 0..quadrature.panels {
            for py in 0..quadrature.panels {
                let x0 = centre.re - half + cell * px as f64;
                let y0 = centre.im - half + cell * py as f64;
                for (u, wu) in nodes.iter().zip(&weights) {
                    for (v, wv) in nodes.iter().zip(&weights) {
                        let x = x0 + 0.5 * cell * (u + 1.0);
                        let y = y0 + 0.5 * cell * (v + 1.0);
                        points[0][0] = Complex64::new(x, y);
                        let c = cyclic_kernel(kernel, &points)?;
                        let w = wu * wv * 0.25 * cell * cell * 2.0; // μ = 2 dx dy
                        total += Complex64::from_polar(
                            (c.log_amplitude - base.log_amplitude).exp(),
                            c.phase - base.phase,
                        ) * w;
                    }
                }
            }
        }
        residuals.push((total - 1.0).norm());
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(ReproducingReport {
        residuals,
        max_residual,
    })
}
