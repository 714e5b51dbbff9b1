//! Direct evaluation of `I_k = ∫_D e^{-kφ(t,s)} a(t,s) dt ds` at finite `k`.

use crate::domain::ConicDomain;
use crate::error::{AsymptoticsError, Result};
use num_complex::Complex64;
use std::cell::{Cell, RefCell};
use toeplab_specfun::quad::{self, Estimate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// The amplitude is cut off outside the ball `|(t, s)| ≤ cutoff`.
    pub cutoff: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            cutoff: 1.0,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

/// Highest total dimension `n̂ + p̂` the nested rule accepts.
pub const ORACLE_MAX_DIM: usize = 3;

/// Nested adaptive Gauss–Kronrod over `D ∩ {|(t,s)| ≤ cutoff}`, `t`
/// coordinates outermost. Every `t` range is split at `0`, `±2/√k` and
/// `±8/√k` so the adaptive rule starts resolved at the scale where the
/// integrand lives.
pub fn quadrature_oracle<P, A>(
    phi: P,
    amplitude: A,
    domain: &ConicDomain,
    k: f64,
    options: &OracleOptions,
) -> Result<Estimate<Complex64>>
where
    P: Fn(&[f64], &[f64]) -> Complex64,
    A: Fn(&[f64], &[f64]) -> Complex64,
{
    if !(k > 0.0) || !(options.cutoff > 0.0) {
        return Err(AsymptoticsError::Precondition(
            "k and the cutoff radius must be positive".into(),
        ));
    }
    if domain.dim() > ORACLE_MAX_DIM || domain.s_dim > 1 || domain.t_dim == 0 {
        return Err(AsymptoticsError::Unsupported(format!(
            "oracle handles 1 ≤ n̂, p̂ ≤ 1, n̂ + p̂ ≤ {ORACLE_MAX_DIM}; got n̂ = {}, p̂ = {}",
            domain.t_dim, domain.s_dim
        )));
    }
    let oracle = Oracle {
        phi,
        amplitude,
        domain,
        k,
        options,
        // keeps tolerances meaningful for integrals that vanish by symmetry
        abs_tol: 1e-17 * k.powf(-(domain.dim() as f64) / 2.0),
        failure: RefCell::new(None),
        evaluations: Cell::new(0),
    };
    let t = vec![0.0; domain.t_dim];
    let est = oracle.over_t(0, &t, options.cutoff * options.cutoff);
    if let Some(e) = oracle.failure.into_inner() {
        return Err(e);
    }
    Ok(Estimate {
        value: est.value,
        error: est.error,
        evaluations: oracle.evaluations.get(),
    })
}

struct Oracle<'a, P, A> {
    phi: P,
    amplitude: A,
    domain: &'a ConicDomain,
    k: f64,
    options: &'a OracleOptions,
    abs_tol: f64,
    failure: RefCell<Option<AsymptoticsError>>,
    evaluations: Cell<usize>,
}

impl<P, A> Oracle<'_, P, A>
where
    P: Fn(&[f64], &[f64]) -> Complex64,
    A: Fn(&[f64], &[f64]) -> Complex64,
{
    fn integrand(&self, t: &[f64], s: &[f64]) -> Complex64 {
        self.evaluations.set(self.evaluations.get() + 1);
        (-self.k * (self.phi)(t, s)).exp() * (self.amplitude)(t, s)
    }

    fn record<T: Default>(&self, r: Result<T>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.failure.borrow_mut().get_or_insert(e);
                T::default()
            }
        }
    }

    fn zero() -> Estimate<Complex64> {
        Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        }
    }

    /// Integral over `[lo, hi]` split at the given interior breakpoints.
    fn piecewise<F: Fn(f64) -> Complex64>(&self, f: F, lo: f64, hi: f64, breaks: &[f64]) -> Estimate<Complex64> {
        let mut nodes = vec![lo];
        nodes.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
        nodes.push(hi);
        let mut total = Self::zero();
        for w in nodes.windows(2) {
            let est = quad::gauss_kronrod(
                &f,
                w[0],
                w[1],
                self.abs_tol,
                self.options.rel_tol,
                self.options.max_subdivisions,
            )
            .map_err(AsymptoticsError::from);
            if let Some(e) = self.record(est.map(Some)) {
                total.value += e.value;
                total.error += e.error;
            }
        }
        total
    }

    fn breaks(&self) -> Vec<f64> {
        let h = self.k.powf(-0.5);
        vec![-8.0 * h, -2.0 * h, 0.0, 2.0 * h, 8.0 * h]
    }

    fn over_t(&self, level: usize, t: &[f64], r2: f64) -> Estimate<Complex64> {
        if level == self.domain.t_dim {
            return self.over_s(t, r2);
        }
        let r = r2.max(0.0).sqrt();
        let breaks = self.breaks();
        self.piecewise(
            |x| {
                let mut local = t.to_vec();
                local[level] = x;
                self.over_t(level + 1, &local, r2 - x * x).value
            },
            -r,
            r,
            &breaks,
        )
    }

    fn over_s(&self, t: &[f64], r2: f64) -> Estimate<Complex64> {
        if self.domain.s_dim == 0 {
            if self.domain.contains(t, &[]) {
                return Estimate {
                    value: self.integrand(t, &[]),
                    error: 0.0,
                    evaluations: 1,
                };
            }
            return Self::zero();
        }
        let Some(section) = self.record(self.domain.section(t)) else {
            return Self::zero();
        };
        let r = r2.max(0.0).sqrt();
        let (lo, hi) = (section[0].0.max(-r), section[0].1.min(r));
        if lo >= hi {
            return Self::zero();
        }
        self.piecewise(|s| self.integrand(t, &[s]), lo, hi, &self.breaks())
    }
}
