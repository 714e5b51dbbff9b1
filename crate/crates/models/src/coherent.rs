//! Mass of coherent states on a domain.

use crate::domain::{DomainKind, Geometry, ModelSpec};
use crate::error::{ModelError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use toeplab_specfun::quad::gauss_kronrod;

/// `‖e_x‖_A = (∫_A |Π_k(y, x)|² dμ(y))^{1/2}` for a Bargmann disk centred at
/// the origin, where `|Π_k(y, x)| = (k/2π) e^{-k|y-x|²/2}`.
///
/// Nested adaptive quadrature in polar coordinates: `r ∈ [0, R]` outside,
/// `θ ∈ [0, π]` inside (the integrand is even in `θ` about the direction of `x`).
pub fn coherent_norm_on_domain(model: &ModelSpec, x: Complex64) -> Result<f64> {
    model.validate()?;
    let radius = match (&model.geometry, &model.domain.kind, model.domain.complemented) {
        (Geometry::BargmannPlane, DomainKind::Disk { radius }, false) => *radius,
        _ => {
            return Err(ModelError::Unsupported(
                "coherent norms need a Bargmann disk".into(),
            ))
        }
    };
    let k = model.k as f64;
    let d = x.norm();
    let tol = 1e-11;
    let inner = |r: f64| -> f64 {
        let base = -k * (r - d) * (r - d);
        let ang = gauss_kronrod(
            |t: f64| (base - 2.0 * k * r * d * (1.0 - t.cos())).exp(),
            0.0,
            PI,
            0.0,
            tol,
            400,
        );
        // the angular integrand is smooth and positive; a failure here is a bug
        2.0 * ang.map(|e| e.value).unwrap_or(f64::NAN)
    };
    // the radial mass sits near r = d (or at r = R when x is outside)
    let split = d.clamp(0.0, radius);
    let mut total = 0.0;
    for (a, b) in [(0.0, split), (split, radius)] {
        if b > a {
            total += gauss_kronrod(|r: f64| 2.0 * r * inner(r), a, b, 0.0, tol, 2000)?.value;
        }
    }
    if !total.is_finite() {
        return Err(ModelError::Assembly("angular quadrature failed".into()));
    }
    Ok((k / (2.0 * PI)) * total.sqrt())
}
