//! The universal constants `C_{p,n}` in
//! `tr(T_A^p - T_A^{p+1}) ~ C_{p,n} vol(∂A) k^{n-1/2}`, by two routes.

use crate::domain::ConicDomain;
use crate::error::{AsymptoticsError, Result};
use crate::moments::{conic_moment, MomentMethod, MomentOptions};
use crate::phase::ModelQuadraticForm;
use serde_json::json;
use std::f64::consts::PI;
use toeplab_specfun::{integral_i, Fn01, QuadratureSpec};

/// Route-B deviations larger than this many standard errors are reported
/// as a disagreement.
pub const AGREEMENT_SIGMAS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalConstant {
    pub p: u32,
    pub n: u32,
    /// `(2π)^{-n} ∫ g_p(er(x)) dx` with `g_p = x^p - x^{p+1}`.
    pub route_a: f64,
    /// `(2π)^{-n(p+1)} ∫_D e^{-q(t)} dt ds` for the model quadratic form.
    pub route_b: f64,
    pub route_b_error: f64,
    /// Imaginary part of the route-B integral (zero in exact arithmetic).
    pub route_b_imag: f64,
    pub evaluations: usize,
}

impl UniversalConstant {
    pub fn relative_difference(&self) -> f64 {
        (self.route_b - self.route_a).abs() / self.route_a
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "n": self.n,
            "route_a": self.route_a,
            "route_b": self.route_b,
            "route_b_error": self.route_b_error,
            "route_b_imag": self.route_b_imag,
            "relative_difference": self.relative_difference(),
        })
    }
}

/// Route A: `C_{p,1} = (2π)^{-1} ∫ g_p(er(x)) dx`, lifted by
/// `C_{p,n+1} = C_{p,1} (2π)^{-n}`.
pub fn universal_constant_route_a(p: u32, n: u32) -> Result<f64> {
    check(p, n)?;
    let i = integral_i(&Fn01::gp(p as f64), &QuadratureSpec::default())?;
    Ok(i * (2.0 * PI).powi(-(n as i32)))
}

/// Route B: the conic moment `∫_D e^{-q}` of the model quadratic form over
/// `D = {0 ≤ s ≤ min_i t_i¹}`, scaled by `(2π)^{-n(p+1)}`.
///
/// Returns `(value, standard error, imaginary part, evaluations)`.
pub fn universal_constant_route_b(p: u32, n: u32, options: &MomentOptions) -> Result<(f64, f64, f64, usize)> {
    check(p, n)?;
    let form = ModelQuadraticForm::new(p as usize, n as usize)?;
    let q = form.quadratic_form()?;
    let domain = ConicDomain::standard_dp(p as usize, n as usize)?;
    let opts = MomentOptions {
        method: MomentMethod::QuasiMonteCarlo,
        ..*options
    };
    let zero_t = vec![0; domain.t_dim];
    let m = conic_moment(&zero_t, &[0], &q, &domain, &opts)?;
    let scale = (2.0 * PI).powi(-((n * (p + 1)) as i32));
    Ok((m.value.re * scale, m.error * scale, m.value.im * scale, m.evaluations))
}

/// `C_{p,n}` by both routes; errors if they disagree beyond
/// `AGREEMENT_SIGMAS` route-B standard errors.
pub fn universal_constant(p: u32, n: u32, options: &MomentOptions) -> Result<UniversalConstant> {
    let route_a = universal_constant_route_a(p, n)?;
    let (route_b, route_b_error, route_b_imag, evaluations) = universal_constant_route_b(p, n, options)?;
    if (route_a - route_b).abs() > AGREEMENT_SIGMAS * route_b_error + 1e-12 * route_a {
        return Err(AsymptoticsError::RouteDisagreement {
            p,
            n,
            route_a,
            route_b,
            error: route_b_error,
        });
    }
    Ok(UniversalConstant {
        p,
        n,
        route_a,
        route_b,
        route_b_error,
        route_b_imag,
        evaluations,
    })
}

fn check(p: u32, n: u32) -> Result<()> {
    if p == 0 || n == 0 {
        return Err(AsymptoticsError::Precondition(format!(
            "C_{{p,n}} needs p, n ≥ 1 (got p = {p}, n = {n})"
        )));
    }
    Ok(())
}
