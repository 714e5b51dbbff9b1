//! Trace functionals of a spectrum: `Σ f(λᵢ)`, counts, entropy, cumulants
//! and the cumulant generating function.

use crate::error::{Result, SpectralError};
use crate::poly::cumulant_polynomial;
use num_complex::Complex64;
use std::f64::consts::PI;
use toeplab_models::Spectrum;
use toeplab_specfun::Fn01;

/// Neumaier's compensated sum; the order of `values` is kept.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn compensated_sum_complex(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let (re, im): (Vec<f64>, Vec<f64>) = values.into_iter().map(|z| (z.re, z.im)).unzip();
    Complex64::new(compensated_sum(re), compensated_sum(im))
}

/// A trace together with a bound on the part cut off by the truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub value: f64,
    pub tail_bound: f64,
}

/// `Σᵢ f(λᵢ)` with a bound on the omitted tail of a truncated spectrum.
///
/// A truncated spectrum stands for infinitely many eigenvalues piling up at
/// an endpoint, so `f` must declare a Hölder exponent there; otherwise the
/// trace is reported as divergent.
pub fn trace_functional_bounded(spec: &Spectrum, f: &Fn01) -> Result<TraceEstimate> {
    let tail_bound = if spec.tail.is_empty() {
        0.0
    } else {
        match (f.vanishes_at_endpoints, f.holder_exponent) {
            (true, Some(p)) => f.holder_norm(p) * spec.tail_power_sum(p),
            _ => {
                return Err(SpectralError::Divergent(
                    "f has no declared decay at the endpoints and the spectrum has an infinite tail"
                        .into(),
                ))
            }
        }
    };
    let value = compensated_sum(spec.pairs().map(|(l, c)| f.eval_pair(l, c)));
    Ok(TraceEstimate { value, tail_bound })
}

/// `tr f(T) = Σᵢ f(λᵢ)`.
pub fn trace_functional(spec: &Spectrum, f: &Fn01) -> Result<f64> {
    trace_functional_bounded(spec, f).map(|t| t.value)
}

/// `Σᵢ λᵢ^p (1-λᵢ)^q` using the stored complements.
pub fn power_trace(spec: &Spectrum, p: f64, q: f64) -> f64 {
    compensated_sum(spec.pairs().map(|(l, c)| pow0(l, p) * pow0(c, q)))
}

fn pow0(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.powf(p)
    }
}

/// Number of eigenvalues in the closed interval `[a, b]`, with multiplicity.
pub fn count_eigenvalues(spec: &Spectrum, a: f64, b: f64) -> Result<usize> {
    if !(a > 0.0 && b < 1.0) {
        return Err(SpectralError::Domain(format!(
            "counting interval [{a}, {b}] must lie inside (0, 1)"
        )));
    }
    if a >= b {
        return Err(SpectralError::Ordering { a, b });
    }
    Ok(spec.eigenvalues.iter().filter(|&&l| a <= l && l <= b).count())
}

/// Von Neumann entropy `Σ -λ ln λ - (1-λ) ln(1-λ)` with `0 ln 0 = 0`.
pub fn entanglement_entropy(spec: &Spectrum) -> f64 {
    let f = Fn01::entropy();
    compensated_sum(spec.pairs().map(|(l, c)| f.eval_pair(l, c)))
}

/// `κ_ℓ = Σᵢ P_ℓ(λᵢ)`, the `ℓ`-th cumulant of the particle number.
pub fn cumulant(spec: &Spectrum, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(SpectralError::Domain("cumulant order must be at least 1".into()));
    }
    let p = cumulant_polynomial(order);
    Ok(compensated_sum(spec.pairs().map(|(l, c)| p.eval_pair(l, c))))
}

/// `e^z - 1` without cancellation for small `|z|`.
fn expm1_complex(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * c - 2.0 * half * half,
        z.re.exp() * s,
    )
}

/// `ln(1 + w)` without cancellation for small `|w|`.
fn ln1p_complex(w: Complex64) -> Complex64 {
    let modulus = 0.5 * (2.0 * w.re + w.re * w.re + w.im * w.im).ln_1p();
    Complex64::new(modulus, w.im.atan2(1.0 + w.re))
}

/// `ln(e^{-tλ}(1 - λ + λe^t))` for one Bernoulli parameter.
///
/// For `λ > 1/2` the equivalent form `ln(1 + (1-λ)(e^{-t} - 1)) + t(1-λ)`
/// is used, so both ends keep full relative precision.
pub fn bernoulli_cgf(t: Complex64, lambda: f64, complement: f64) -> Complex64 {
    if lambda <= 0.5 {
        ln1p_complex(expm1_complex(t) * lambda) - t * lambda
    } else {
        ln1p_complex(expm1_complex(-t) * complement) + t * complement
    }
}

/// Cumulant generating function of the centred particle number,
/// `Σᵢ ln(e^{-tλᵢ}(1 - λᵢ + λᵢ e^t))`, for `|Im t| < π`.
pub fn cgf(spec: &Spectrum, t: Complex64) -> Result<Complex64> {
    if !(t.im.abs() < PI) || !t.re.is_finite() {
        return Err(SpectralError::Domain(format!(
            "cgf needs |Im t| < π, got t = {t}"
        )));
    }
    Ok(compensated_sum_complex(
        spec.pairs().map(|(l, c)| bernoulli_cgf(t, l, c)),
    ))
}

/// `λ ↦ ln(e^{-tλ}(1 - λ + λe^t))` at real `t` as a function on `[0, 1]`,
/// so that `I` of it is the limit of the rescaled cgf.
pub fn cgf_function(t: f64) -> Fn01 {
    Fn01::with_complement(move |l, c| bernoulli_cgf(Complex64::new(t, 0.0), l, c).re).holder(1.0)
}
