//! Sphere sections sampled on a quadrature grid, giving a concrete
//! finite-dimensional ambient space in which `1_A` acts as a projector.

use crate::closed::cap_parameter;
use crate::domain::DomainKind;
use crate::error::{ModelError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use toeplab_specfun::ln_gamma;
use toeplab_specfun::quad::gauss_legendre;

/// Columns are the basis sections `s_ℓ`, rows are grid points; entries carry
/// the square root of the quadrature weight so that `B* B` is the Gram
/// matrix and `B* P B` the Toeplitz matrix, where `P = diag(inside)`.
#[derive(Debug, Clone)]
pub struct SampledBasis {
    pub values: DMatrix<Complex64>,
    pub inside: Vec<bool>,
}

impl SampledBasis {
    /// Diagonal of the projector `1_A` on the grid.
    pub fn projector(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.inside.len(), self.inside.len(), |i, j| {
            if i == j && self.inside[i] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// Sample the degree-`k` sphere basis for a polar cap (or the empty/full
/// domain). The grid is exact for every product `s_n s̄_m`: Gauss–Legendre
/// of order `k + 2` in `u` on each side of the cap edge and `2k + 2`
/// equispaced angles.
pub fn sphere_sampled_basis(k: u32, kind: &DomainKind) -> Result<SampledBasis> {
    let u_split = match kind {
        DomainKind::PolarCap { theta0 } => Some(cap_parameter(*theta0).0),
        DomainKind::Empty | DomainKind::Full => None,
        other => {
            return Err(ModelError::Unsupported(format!(
                "sampled basis for {other:?}"
            )))
        }
    };
    let kf = k as f64;
    let (x, w) = gauss_legendre(k as usize + 2);
    let mut nodes: Vec<(f64, f64, bool)> = Vec::new();
    let mut push = |lo: f64, hi: f64, inside: bool| {
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push((lo + 0.5 * (hi - lo) * (xi + 1.0), 0.5 * (hi - lo) * wi, inside));
        }
    };
    match u_split {
        Some(u0) => {
            push(0.0, u0, true);
            push(u0, 1.0, false);
        }
        None => push(0.0, 1.0, matches!(kind, DomainKind::Full)),
    }
    let n_phi = 2 * k as usize + 2;
    let w_phi = 2.0 * PI / n_phi as f64;
    let dim = k as usize + 1;
    let ln_norm: Vec<f64> = (0..dim)
        .map(|l| {
            0.5 * ((kf + 1.0).ln() + ln_gamma(kf + 1.0)
                - ln_gamma(l as f64 + 1.0)
                - ln_gamma(kf - l as f64 + 1.0)
                - (2.0 * PI).ln())
        })
        .collect();
    let rows = nodes.len() * n_phi;
    let mut values = DMatrix::zeros(rows, dim);
    let mut inside = Vec::with_capacity(rows);
    for (i, &(u, wu, ins)) in nodes.iter().enumerate() {
        for j in 0..n_phi {
            let phi = j as f64 * w_phi;
            let row = i * n_phi + j;
            inside.push(ins);
            let sw = (wu * w_phi).sqrt();
            for l in 0..dim {
                let lf = l as f64;
                let amp = (ln_norm[l] + 0.5 * lf * u.ln() + 0.5 * (kf - lf) * (1.0 - u).ln()).exp();
                values[(row, l)] = Complex64::from_polar(amp * sw, lf * phi);
            }
        }
    }
    Ok(SampledBasis { values, inside })
}
