//! Phases `φ = q + r` and amplitudes as explicit Taylor coefficient maps.

use crate::error::{AsymptoticsError, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Truncated power series in `vars` real variables: exponent vector →
/// coefficient. `degree` is the total degree up to which the data is
/// complete (`None` for an exact polynomial).
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorMap {
    pub vars: usize,
    pub degree: Option<u32>,
    pub terms: BTreeMap<Vec<u32>, Complex64>,
}

impl TaylorMap {
    /// Exact polynomial with no terms yet.
    pub fn polynomial(vars: usize) -> Self {
        Self {
            vars,
            degree: None,
            terms: BTreeMap::new(),
        }
    }

    /// Series known to total degree `degree`.
    pub fn truncated(vars: usize, degree: u32) -> Self {
        Self {
            vars,
            degree: Some(degree),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        Self::polynomial(vars).with_term(&vec![0; vars], c.into())
    }

    /// Adds `c · x^exponents` (accumulating onto an existing term).
    pub fn with_term(mut self, exponents: &[u32], c: Complex64) -> Self {
        self.add_term(exponents, c);
        self
    }

    pub fn add_term(&mut self, exponents: &[u32], c: Complex64) {
        assert_eq!(exponents.len(), self.vars, "exponent vector length");
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        *self.terms.entry(exponents.to_vec()).or_default() += c;
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e.iter().zip(x).map(|(&p, &xi)| xi.powi(p as i32)).product();
                c * m
            })
            .sum()
    }

    /// Product keeping only terms of total degree `≤ max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::polynomial(self.vars);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > max_degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&e, ca * cb);
            }
        }
        out
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            ..self.clone()
        }
    }

    /// Whether the data is complete to total degree `needed`.
    pub fn known_to(&self, needed: u32) -> bool {
        self.degree.map_or(true, |d| d >= needed)
    }
}

/// `q(t) = ½ tᵀ Q t` with `Q` complex symmetric and `Re Q` positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    pub matrix: DMatrix<Complex64>,
}

impl QuadraticForm {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(AsymptoticsError::Precondition("Q must be square and non-empty".into()));
        }
        let asym = (&matrix - matrix.transpose()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if asym > 1e-12 * matrix.iter().map(|c| c.norm()).fold(1.0, f64::max) {
            return Err(AsymptoticsError::Precondition(format!(
                "Q must be symmetric (asymmetry {asym:e})"
            )));
        }
        let form = Self { matrix };
        let lo = form.smallest_real_eigenvalue();
        if lo <= 0.0 {
            return Err(AsymptoticsError::Precondition(format!(
                "Re Q is not positive definite (smallest eigenvalue {lo:e})"
            )));
        }
        Ok(form)
    }

    /// Real diagonal form `½ Σ d_i t_i²`.
    pub fn diagonal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                d[i].into()
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.matrix.map(|c| c.re)
    }

    pub fn imag_part(&self) -> DMatrix<f64> {
        self.matrix.map(|c| c.im)
    }

    pub fn smallest_real_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.real_part()).eigenvalues.min()
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * (t[i] * t[j]);
            }
        }
        0.5 * acc
    }

    /// `λ q`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.matrix.map(|c| c * lambda))
    }
}

/// Phase `φ(t, s) = q(t) + r(t, s)`; `r` vanishes to third order.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseData {
    pub q: QuadraticForm,
    pub s_dim: usize,
    /// Taylor map of `r` over the variables `(t, s)`, `t` first.
    pub remainder: TaylorMap,
}

impl PhaseData {
    pub fn new(q: QuadraticForm, s_dim: usize, remainder: TaylorMap) -> Result<Self> {
        if remainder.vars != q.dim() + s_dim {
            return Err(AsymptoticsError::Precondition(format!(
                "remainder has {} variables, expected {}",
                remainder.vars,
                q.dim() + s_dim
            )));
        }
        if let Some(d) = remainder.min_degree() {
            if d < 3 {
                return Err(AsymptoticsError::Precondition(format!(
                    "remainder has a term of degree {d}; it must vanish to third order"
                )));
            }
        }
        Ok(Self { q, s_dim, remainder })
    }

    /// Pure quadratic phase, exact.
    pub fn quadratic(q: QuadraticForm, s_dim: usize) -> Self {
        let vars = q.dim() + s_dim;
        Self {
            q,
            s_dim,
            remainder: TaylorMap::polynomial(vars),
        }
    }

    pub fn t_dim(&self) -> usize {
        self.q.dim()
    }

    pub fn eval(&self, t: &[f64], s: &[f64]) -> Complex64 {
        let x: Vec<f64> = t.iter().chain(s).copied().collect();
        self.q.eval(t) + self.remainder.eval(&x)
    }
}

/// The quadratic part of the cyclic kernel phase for `p + 1` points in
/// complex dimension `n`, in the variables `t_i = x_i - x_{p+1}`:
/// `M_ii = id_{2n}`, `M_{i,i+1} = ½[[-1, i], [-i, -1]] ⊗ id_n`,
/// `M_{i+1,i} = M_{i,i+1}ᵀ`, zero otherwise. Each `t_i` is ordered as
/// `(x¹…xⁿ, y¹…yⁿ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelQuadraticForm {
    pub p: usize,
    pub n: usize,
}

impl ModelQuadraticForm {
    pub fn new(p: usize, n: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(AsymptoticsError::Precondition("p and n must be positive".into()));
        }
        Ok(Self { p, n })
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        let (p, n) = (self.p, self.n);
        let b = 2 * n;
        let mut m = DMatrix::<Complex64>::zeros(b * p, b * p);
        let half = 0.5;
        let i_unit = Complex64::new(0.0, 1.0);
        let small = [
            [Complex64::from(-half), i_unit * half],
            [-i_unit * half, Complex64::from(-half)],
        ];
        for blk in 0..p {
            for d in 0..b {
                m[(blk * b + d, blk * b + d)] = 1.0.into();
            }
            if blk + 1 < p {
                for (r, row) in small.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        for j in 0..n {
                            let gi = blk * b + r * n + j;
                            let gj = (blk + 1) * b + c * n + j;
                            m[(gi, gj)] = v;
                            m[(gj, gi)] = v;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn quadratic_form(&self) -> Result<QuadraticForm> {
        QuadraticForm::new(self.matrix())
    }
}
