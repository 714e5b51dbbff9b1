//! Cumulant polynomials of the Bernoulli law.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::{Arc, Mutex, OnceLock};

/// Exact degrees are cached up to this one; the recursion itself has no cap.
pub const MAX_CACHED_DEGREE: usize = 64;

/// `P_ℓ` with `κ_ℓ(Bernoulli(λ)) = P_ℓ(λ)`, from `P₁ = X` and
/// `P_{ℓ+1} = X(1-X) P_ℓ'`.
///
/// Coefficients are exact rationals (in fact integers), lowest degree
/// first. For evaluation `P_ℓ = X(1-X) Q_ℓ` with `Q_ℓ = P_{ℓ-1}'` is used,
/// which keeps full relative precision near both endpoints.
#[derive(Debug, Clone)]
pub struct CumulantPolynomial {
    pub degree: usize,
    pub coefficients: Vec<BigRational>,
    reduced: Vec<f64>,
}

fn derivative(c: &[BigRational]) -> Vec<BigRational> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(j, a)| a * BigRational::from_integer(BigInt::from(j)))
        .collect()
}

/// Multiply by `X - X²`.
fn times_p2(c: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); c.len() + 2];
    for (j, a) in c.iter().enumerate() {
        out[j + 1] += a;
        out[j + 2] -= a;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn to_f64(c: &[BigRational]) -> Vec<f64> {
    c.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
}

impl CumulantPolynomial {
    fn first() -> Self {
        Self {
            degree: 1,
            coefficients: vec![BigRational::zero(), BigRational::one()],
            reduced: Vec::new(),
        }
    }

    fn next(&self) -> Self {
        let d = derivative(&self.coefficients);
        Self {
            degree: self.degree + 1,
            coefficients: times_p2(&d),
            reduced: to_f64(&d),
        }
    }

    /// Coefficients rounded once to `f64`.
    pub fn coefficients_f64(&self) -> Vec<f64> {
        to_f64(&self.coefficients)
    }

    /// `P_ℓ(t)` given `t` and `1 - t`.
    pub fn eval_pair(&self, t: f64, tc: f64) -> f64 {
        if self.degree == 1 {
            return t;
        }
        // parity P_ℓ(X) = (-1)^ℓ P_ℓ(1 - X): always expand around the nearer endpoint
        let (x, xc, sign) = if t > 0.5 && self.degree % 2 == 1 {
            (tc, t, -1.0)
        } else if t > 0.5 {
            (tc, t, 1.0)
        } else {
            (t, tc, 1.0)
        };
        let q = self.reduced.iter().rev().fold(0.0, |acc, &a| acc * x + a);
        sign * x * xc * q
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_pair(t, 1.0 - t)
    }

    /// Integer coefficient vector, if every coefficient is integral.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

fn table() -> &'static Mutex<Vec<Arc<CumulantPolynomial>>> {
    static TABLE: OnceLock<Mutex<Vec<Arc<CumulantPolynomial>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Arc::new(CumulantPolynomial::first())]))
}

/// `P_ℓ` for `ℓ >= 1`, memoized up to [`MAX_CACHED_DEGREE`].
///
/// # Panics
/// If `ℓ = 0`.
pub fn cumulant_polynomial(degree: usize) -> Arc<CumulantPolynomial> {
    assert!(degree >= 1, "cumulant polynomials start at degree 1");
    let mut guard = table().lock().unwrap_or_else(|e| e.into_inner());
    while guard.len() < degree.min(MAX_CACHED_DEGREE) {
        let next = guard.last().expect("table is seeded").next();
        guard.push(Arc::new(next));
    }
    if degree <= guard.len() {
        return guard[degree - 1].clone();
    }
    let mut p = (*guard[guard.len() - 1]).clone();
    drop(guard);
    while p.degree < degree {
        p = p.next();
    }
    Arc::new(p)
}
