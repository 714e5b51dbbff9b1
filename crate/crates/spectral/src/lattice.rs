//! Lattice sums: the model variable `X(α)` and Euler–Maclaurin checks.

use crate::error::{Result, SpectralError};
use crate::poly::cumulant_polynomial;
use crate::trace::compensated_sum;
use toeplab_specfun::er_pair;

const MAX_TERMS: usize = 50_000_000;

/// `κ_ℓ(X(α)) = Σ_{m∈ℤ} P_ℓ(er(αm))`.
///
/// Terms `m` and `-m` are paired through `P_ℓ(1 - x) = (-1)^ℓ P_ℓ(x)`, so odd
/// orders vanish identically. The sum stops once `er(-α|m|)` times a bound on
/// `|P_ℓ(t)/t|` drops below a relative `1e-18`.
pub fn model_variable_cumulant(alpha: f64, order: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(SpectralError::Domain(format!("α must be positive, got {alpha}")));
    }
    if order < 2 {
        return Err(SpectralError::Domain("model-variable cumulants start at order 2".into()));
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    let p = cumulant_polynomial(order);
    let slope: f64 = p.coefficients_f64().iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    let mut terms = vec![p.eval_pair(0.5, 0.5)];
    let mut running = terms[0].abs();
    for m in 1..MAX_TERMS {
        let (t, tc) = er_pair(-alpha * m as f64);
        let term = 2.0 * p.eval_pair(t, tc);
        terms.push(term);
        running += term.abs();
        if t * slope <= 1e-18 * running {
            return Ok(compensated_sum(terms.into_iter().rev()));
        }
    }
    Err(SpectralError::Precondition(format!(
        "lattice sum did not settle within {MAX_TERMS} terms"
    )))
}

/// `τ⁻¹ Σ_{ℓ∈ℤ} f((ℓ + offset)/τ)`.
///
/// Summation walks outwards from `ℓ = 0` and stops in each direction after
/// 16 consecutive terms below `1e-18` relative to the running magnitude.
pub fn euler_maclaurin_sum(f: impl Fn(f64) -> f64, tau: f64, offset: f64) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(SpectralError::Domain(format!("τ must be positive, got {tau}")));
    }
    let mut right = Vec::new();
    let mut left = Vec::new();
    let mut magnitude = 0.0;
    for (dir, out) in [(1i64, &mut right), (-1i64, &mut left)] {
        let start = if dir > 0 { 0 } else { -1 };
        let mut quiet = 0;
        let mut l = start;
        loop {
            let v = f((l as f64 + offset) / tau);
            if !v.is_finite() {
                return Err(SpectralError::Precondition(format!(
                    "f is not finite at {}",
                    (l as f64 + offset) / tau
                )));
            }
            out.push(v);
            magnitude += v.abs();
            quiet = if v.abs() <= 1e-18 * magnitude { quiet + 1 } else { 0 };
            if quiet >= 16 {
                break;
            }
            if out.len() > MAX_TERMS {
                return Err(SpectralError::Precondition(
                    "f does not decay on the lattice".into(),
                ));
            }
            l += dir;
        }
    }
    // small tails first
    let sum = compensated_sum(left.into_iter().rev().chain(right.into_iter().rev()));
    Ok(sum / tau)
}

/// Lattice sums over a `τ`-ladder against a reference integral.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerMaclaurinCheck {
    pub taus: Vec<f64>,
    pub sums: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Every residual is below the first one scaled by `(τ₀/τ)^6`, or
    /// already at the rounding floor `floor`.
    pub faster_than_sixth_power: bool,
    pub floor: f64,
}

/// Compare [`euler_maclaurin_sum`] with `integral` along `taus`.
pub fn euler_maclaurin_check(
    f: impl Fn(f64) -> f64,
    integral: f64,
    taus: &[f64],
    offset: f64,
) -> Result<EulerMaclaurinCheck> {
    if taus.len() < 2 || taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SpectralError::Domain("need an increasing ladder of at least two τ".into()));
    }
    let sums = taus
        .iter()
        .map(|&t| euler_maclaurin_sum(&f, t, offset))
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<f64> = sums.iter().map(|s| (s - integral).abs()).collect();
    let floor = 1e-13 * integral.abs().max(1.0);
    let faster_than_sixth_power = taus.iter().zip(&residuals).all(|(&t, &r)| {
        r <= floor.max(residuals[0] * (taus[0] / t).powi(6))
    });
    Ok(EulerMaclaurinCheck {
        taus: taus.to_vec(),
        sums,
        residuals,
        faster_than_sixth_power,
        floor,
    })
}
