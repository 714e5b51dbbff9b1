use crate::er::{density_delta_pair, er_pair};
use crate::error::{Result, SpecfunError};
use crate::quad::{gauss_kronrod, gauss_legendre_composite, tanh_sinh_unit};
use std::fmt;
use std::sync::Arc;

type Evaluator = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A real function on `[0, 1]`.
///
/// The evaluator receives `(t, 1 - t)`; callers that know the complement
/// to full precision (eigenvalues close to 1, quadrature nodes) pass it
/// directly. Functions that only need `t` can ignore the second argument.
#[derive(Clone)]
pub struct Fn01 {
    evaluator: Arc<Evaluator>,
    pub holder_exponent: Option<f64>,
    pub vanishes_at_endpoints: bool,
}

impl fmt::Debug for Fn01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fn01")
            .field("holder_exponent", &self.holder_exponent)
            .field("vanishes_at_endpoints", &self.vanishes_at_endpoints)
            .finish_non_exhaustive()
    }
}

impl Fn01 {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::with_complement(move |t, _| f(t))
    }

    pub fn with_complement(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            evaluator: Arc::new(f),
            holder_exponent: None,
            vanishes_at_endpoints: false,
        }
    }

    /// Declare `|f(t)|, |f(1-t)| <= K t^p` near the endpoints.
    pub fn holder(mut self, p: f64) -> Self {
        assert!(p > 0.0, "Hölder exponent must be positive");
        self.holder_exponent = Some(p);
        self.vanishes_at_endpoints = true;
        self
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t, 1.0 - t)
    }

    pub fn eval_pair(&self, t: f64, tc: f64) -> f64 {
        (self.evaluator)(t, tc)
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0).holder(1.0)
    }

    /// `X(1 - X)`.
    pub fn p2() -> Self {
        Self::with_complement(|t, tc| t * tc).holder(1.0)
    }

    /// `-x ln x - (1-x) ln(1-x)`, zero at both endpoints.
    pub fn entropy() -> Self {
        Self::with_complement(binary_entropy).holder(0.9)
    }

    /// `g_p(x) = x^p - x^{p+1}`.
    pub fn gp(p: f64) -> Self {
        Self::with_complement(move |t, tc| t.powf(p) * tc).holder(p.min(1.0))
    }

    /// `h_p(x) = x^p (1 - x)^p`.
    pub fn hp(p: f64) -> Self {
        Self::with_complement(move |t, tc| (t * tc).powf(p)).holder(p)
    }

    /// The function `x ↦ f(1 - x)`.
    pub fn reflected(&self) -> Self {
        let inner = self.evaluator.clone();
        Self {
            evaluator: Arc::new(move |t, tc| inner(tc, t)),
            holder_exponent: self.holder_exponent,
            vanishes_at_endpoints: self.vanishes_at_endpoints,
        }
    }

    /// Sampled estimate of `K = sup |f(t)| / min(t, 1-t)^p`.
    ///
    /// This is the Hölder norm `‖f‖_p`; samples cover a log-spaced grid
    /// towards both endpoints and a uniform interior grid.
    pub fn holder_norm(&self, p: f64) -> f64 {
        let mut k: f64 = 0.0;
        let mut probe = |t: f64, tc: f64| {
            let m = t.min(tc);
            let r = self.eval_pair(t, tc).abs() / m.powf(p);
            if r.is_nan() {
                k = f64::INFINITY;
            } else {
                k = k.max(r);
            }
        };
        for j in 1..=160 {
            let s = 10f64.powf(-(j as f64) / 8.0);
            probe(s, 1.0 - s);
            probe(1.0 - s, s);
        }
        for j in 1..200 {
            let t = j as f64 / 200.0;
            probe(t, 1.0 - t);
        }
        k
    }
}

/// `-t ln t - tc ln tc` with `0 ln 0 = 0`.
pub(crate) fn binary_entropy(t: f64, tc: f64) -> f64 {
    let a = if t > 0.0 { -t * t.ln() } else { 0.0 };
    let b = if tc > 0.0 { -tc * tc.ln() } else { 0.0 };
    a + b
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    Adaptive,
    /// Composite Gauss–Legendre of the given order, panels doubled until stable.
    Gauss { order: usize },
    /// Trapezoid on a uniform grid, step halved until stable.
    Trapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: Rule::Adaptive,
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_refinements: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rule(rule: Rule) -> Self {
        Self {
            rule,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(SpecfunError::Precondition(format!(
                "tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_refinements < 1 {
            return Err(SpecfunError::Precondition(
                "max_refinements must be at least 1".into(),
            ));
        }
        if let Rule::Gauss { order } = self.rule {
            if order < 2 {
                return Err(SpecfunError::Precondition("Gauss order must be >= 2".into()));
            }
        }
        Ok(())
    }
}

/// Both quadrature routes for `I(f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Routes {
    /// `∫ f(er(x)) dx` on the truncated window.
    pub profile: f64,
    /// `∫_0^1 f(t) δ(t) dt` by tanh-sinh.
    pub density: f64,
    pub window: f64,
}

/// Half-width of the integration window in `x`.
///
/// Starts from `max(6, √ln(1/tol)) + 2` and widens until the Gaussian tail
/// bound `K e^{-p x²} / (2 p x)` of a Hölder-`p` integrand drops below `tol/4`.
fn window(p: f64, k: f64, abs_tol: f64) -> f64 {
    let mut x = 6f64.max((1.0 / abs_tol).ln().sqrt()) + 2.0;
    let tail = |x: f64| {
        // er(-x) <= e^{-x²} / (2√π x), raised to the power p and integrated
        let bound = (-p * x * x).exp() / (2.0 * p * x) * (2.0 * crate::SQRT_PI * x).powf(-p);
        2.0 * k.max(1.0) * bound
    };
    while tail(x) > 0.25 * abs_tol && x < 200.0 {
        x += 1.0;
    }
    x
}

fn check_decay(f: &Fn01) -> Result<(f64, f64)> {
    let p = match (f.vanishes_at_endpoints, f.holder_exponent) {
        (true, Some(p)) if p > 0.0 => p,
        _ => {
            return Err(SpecfunError::Precondition(
                "I(f) needs f to vanish at 0 and 1 with a declared Hölder exponent".into(),
            ))
        }
    };
    let k = f.holder_norm(p);
    if !k.is_finite() || k > 1e12 {
        return Err(SpecfunError::Precondition(format!(
            "f does not decay like t^{p} at the endpoints (sampled constant {k:e})"
        )));
    }
    Ok((p, k))
}

/// Both routes of `I(f) = ∫ f(er(x)) dx = ∫_0^1 f(t) δ(t) dt`, without the
/// agreement check.
pub fn integral_i_routes(f: &Fn01, q: &QuadratureSpec) -> Result<Routes> {
    q.validate()?;
    let (p, k) = check_decay(f)?;
    let x_max = window(p, k, q.abs_tol);
    let g = |x: f64| {
        let (t, tc) = er_pair(x);
        f.eval_pair(t, tc)
    };
    let profile = match q.rule {
        Rule::Adaptive => {
            let left = gauss_kronrod(g, -x_max, 0.0, 0.25 * q.abs_tol, q.rel_tol, q.max_refinements)?;
            let right = gauss_kronrod(g, 0.0, x_max, 0.25 * q.abs_tol, q.rel_tol, q.max_refinements)?;
            left.value + right.value
        }
        Rule::Gauss { order } => {
            let mut panels = 8;
            let mut prev = gauss_legendre_composite(g, -x_max, x_max, order, panels);
            let mut converged = None;
            for _ in 0..q.max_refinements.min(20) {
                panels *= 2;
                let cur = gauss_legendre_composite(g, -x_max, x_max, order, panels);
                if (cur - prev).abs() <= 0.5 * q.abs_tol {
                    converged = Some(cur);
                    break;
                }
                prev = cur;
            }
            converged.ok_or(SpecfunError::NonConvergence {
                what: "composite Gauss-Legendre",
                budget: q.max_refinements,
                estimate: prev,
                error: f64::NAN,
            })?
        }
        Rule::Trapezoid => {
            let mut h = 0.5;
            let mut prev = trapezoid(&g, x_max, h);
            let mut converged = None;
            for _ in 0..q.max_refinements.min(24) {
                h *= 0.5;
                let cur = trapezoid(&g, x_max, h);
                if (cur - prev).abs() <= 0.5 * q.abs_tol {
                    converged = Some(cur);
                    break;
                }
                prev = cur;
            }
            converged.ok_or(SpecfunError::NonConvergence {
                what: "trapezoid",
                budget: q.max_refinements,
                estimate: prev,
                error: f64::NAN,
            })?
        }
    };
    let density = tanh_sinh_unit(
        |t, tc| {
            let v = f.eval_pair(t, tc);
            if v == 0.0 {
                0.0
            } else {
                v * density_delta_pair(t, tc)
            }
        },
        0.25 * q.abs_tol,
        q.max_refinements.clamp(6, 14),
    )?
    .value;
    Ok(Routes {
        profile,
        density,
        window: x_max,
    })
}

fn trapezoid(g: &impl Fn(f64) -> f64, x_max: f64, h: f64) -> f64 {
    let n = (x_max / h).ceil() as i64;
    let mut s = g(0.0);
    for j in 1..=n {
        let x = j as f64 * h;
        s += g(x) + g(-x);
    }
    s * h
}

/// The boundary functional `I(f) = ∫_ℝ f(er(x)) dx`.
///
/// Computed on `[-X, X]` with the rule of `q`, and cross-checked against
/// `∫_0^1 f(t) δ(t) dt`; the two must agree within `10·abs_tol`.
pub fn integral_i(f: &Fn01, q: &QuadratureSpec) -> Result<f64> {
    let r = integral_i_routes(f, q)?;
    let allowed = 10.0 * q.abs_tol;
    if (r.profile - r.density).abs() > allowed {
        return Err(SpecfunError::RouteDisagreement {
            first: r.profile,
            second: r.density,
            allowed,
        });
    }
    Ok(r.profile)
}
