//! Weyl-law predictions for counts and traces.

use crate::error::{Result, SpectralError};
use crate::trace::{compensated_sum, trace_functional};
use std::f64::consts::PI;
use toeplab_models::{Spectrum, TailSide};
use toeplab_specfun::{er_inv, integral_i, Fn01, QuadratureSpec};

/// Leading-order prediction for `tr f(T_{A,k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylPrediction {
    pub k: u32,
    pub n: u32,
    pub boundary_volume: f64,
    pub functional: String,
    pub value: f64,
}

/// `k^{n-1/2} (2π)^{-n} vol(∂A)`, the area-law scale.
pub fn boundary_scale(k: u32, n: u32, boundary_volume: f64) -> f64 {
    (k as f64).powf(n as f64 - 0.5) * (2.0 * PI).powi(-(n as i32)) * boundary_volume
}

fn check_scale(k: u32, n: u32, boundary_volume: f64) -> Result<()> {
    if k == 0 || n == 0 || !(boundary_volume >= 0.0 && boundary_volume.is_finite()) {
        return Err(SpectralError::Domain(format!(
            "need k >= 1, n >= 1 and a finite boundary volume (k = {k}, n = {n}, vol = {boundary_volume})"
        )));
    }
    Ok(())
}

/// Predicted number of eigenvalues in `[a, b]`:
/// `k^{n-1/2} (2π)^{-n} vol(∂A) (er⁻¹(b) - er⁻¹(a))`.
pub fn weyl_count(k: u32, n: u32, boundary_volume: f64, a: f64, b: f64) -> Result<f64> {
    check_scale(k, n, boundary_volume)?;
    if !(a > 0.0 && b < 1.0) {
        return Err(SpectralError::Domain(format!(
            "counting interval [{a}, {b}] must lie inside (0, 1)"
        )));
    }
    if a >= b {
        return Err(SpectralError::Ordering { a, b });
    }
    Ok(boundary_scale(k, n, boundary_volume) * (er_inv(b)? - er_inv(a)?))
}

/// Predicted `tr f(T_{A,k}) ≈ k^{n-1/2} (2π)^{-n} vol(∂A) I(f)`.
pub fn weyl_trace(k: u32, n: u32, boundary_volume: f64, f: &Fn01, q: &QuadratureSpec) -> Result<f64> {
    check_scale(k, n, boundary_volume)?;
    Ok(boundary_scale(k, n, boundary_volume) * integral_i(f, q)?)
}

/// [`weyl_trace`] packaged with its parameters.
pub fn weyl_prediction(
    k: u32,
    n: u32,
    boundary_volume: f64,
    label: &str,
    f: &Fn01,
    q: &QuadratureSpec,
) -> Result<WeylPrediction> {
    Ok(WeylPrediction {
        k,
        n,
        boundary_volume,
        functional: label.to_string(),
        value: weyl_trace(k, n, boundary_volume, f, q)?,
    })
}

/// Result of [`two_term_weyl`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTermWeyl {
    pub actual: f64,
    /// Volume term plus the boundary correction.
    pub predicted: f64,
    /// Volume term only.
    pub leading: f64,
}

/// Two-term Weyl law for a continuous `g` with a declared Hölder exponent.
///
/// With `f(x) = g(x) - g(0)(1-x) - g(1)x`, the prediction is
/// `(k/2π)^n (g(0) μ(A^c) + g(1) μ(A) + k^{-1/2} vol(∂A) I(f))`, and the
/// actual trace is assembled from the same splitting. A term whose
/// coefficient vanishes is dropped, so `μ(A^c) = ∞` is allowed when `g(0) = 0`.
pub fn two_term_weyl(
    spec: &Spectrum,
    g: &Fn01,
    mu_a: f64,
    mu_ac: f64,
    q: &QuadratureSpec,
) -> Result<TwoTermWeyl> {
    let p = g.holder_exponent.ok_or_else(|| {
        SpectralError::Precondition("g needs a declared Hölder exponent at the endpoints".into())
    })?;
    let (k, n, vol) = (spec.k, spec.complex_dim, spec.domain.boundary_volume);
    check_scale(k, n, vol)?;
    let g0 = g.eval_pair(0.0, 1.0);
    let g1 = g.eval_pair(1.0, 0.0);
    for t in &spec.tail {
        let coefficient = match t.side {
            TailSide::NearZero => g0,
            TailSide::NearOne => g1,
        };
        if coefficient != 0.0 && t.first > 0.0 {
            return Err(SpectralError::Divergent(
                "g does not vanish at the endpoint where the spectrum accumulates".into(),
            ));
        }
    }
    let inner = g.clone();
    let f = Fn01::with_complement(move |t, tc| inner.eval_pair(t, tc) - g0 * tc - g1 * t).holder(p);
    let mut actual = vec![trace_functional(spec, &f)?];
    if g1 != 0.0 {
        actual.push(g1 * compensated_sum(spec.eigenvalues.iter().copied()));
    }
    if g0 != 0.0 {
        actual.push(g0 * compensated_sum(spec.complements.iter().copied()));
    }
    let volume = (k as f64 / (2.0 * PI)).powi(n as i32);
    let mut leading = 0.0;
    if g0 != 0.0 {
        leading += g0 * mu_ac;
    }
    if g1 != 0.0 {
        leading += g1 * mu_a;
    }
    let correction = (k as f64).powf(-0.5) * vol * integral_i(&f, q)?;
    Ok(TwoTermWeyl {
        actual: compensated_sum(actual),
        predicted: volume * (leading + correction),
        leading: volume * leading,
    })
}

/// Count law for a truncated Fourier Toeplitz matrix on arcs of the circle:
/// `ln k · #∂A / (2π²) · (m⁻¹(b) - m⁻¹(a))` with `m(x) = (1 + tanh(x/2))/2`,
/// so `m⁻¹(y) = ln(y / (1-y))`.
pub fn fourier_count_law(k: u32, boundary_points: usize, a: f64, b: f64) -> Result<f64> {
    if k < 2 {
        return Err(SpectralError::Domain("the logarithmic law needs k >= 2".into()));
    }
    if !(a > 0.0 && b < 1.0) {
        return Err(SpectralError::Domain(format!(
            "counting interval [{a}, {b}] must lie inside (0, 1)"
        )));
    }
    if a >= b {
        return Err(SpectralError::Ordering { a, b });
    }
    let logit = |y: f64| (y / (1.0 - y)).ln();
    Ok((k as f64).ln() * boundary_points as f64 / (2.0 * PI * PI) * (logit(b) - logit(a)))
}
