//! Conic integration domains `D ⊂ ℝ^n̂ × ℝ^p̂` cut out by homogeneous
//! linear inequalities.

use crate::error::{AsymptoticsError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    /// `0 ≤ s ≤ min` of selected `t` coordinates.
    Standard,
    /// `t₁ ≥ 0`, `|s_j| ≤ t₁` for every `j`.
    HalfspaceProduct,
    Custom,
    /// No constraint at all (not a bounded-section cone).
    Whole,
}

/// `⟨t_coeffs, t⟩ + ⟨s_coeffs, s⟩ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub t_coeffs: Vec<f64>,
    pub s_coeffs: Vec<f64>,
}

impl LinearConstraint {
    fn value(&self, t: &[f64], s: &[f64]) -> f64 {
        dot(&self.t_coeffs, t) + dot(&self.s_coeffs, s)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConicDomain {
    pub t_dim: usize,
    pub s_dim: usize,
    pub kind: ConicKind,
    pub constraints: Vec<LinearConstraint>,
}

/// Section `{s : (t, s) ∈ D}` for a fixed `t`: a box, one interval per `s`
/// coordinate (bounds may be infinite).
pub type Section = Vec<(f64, f64)>;

impl ConicDomain {
    /// `{(t, s) ∈ ℝ^{t_dim} × ℝ : 0 ≤ s ≤ min_i t_{c_i}}`.
    pub fn standard(t_dim: usize, coords: &[usize]) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|&c| c >= t_dim) {
            return Err(AsymptoticsError::Precondition(format!(
                "coordinates {coords:?} do not select from {t_dim} t-variables"
            )));
        }
        let mut constraints = vec![LinearConstraint {
            t_coeffs: vec![0.0; t_dim],
            s_coeffs: vec![1.0],
        }];
        for &c in coords {
            let mut t_coeffs = vec![0.0; t_dim];
            t_coeffs[c] = 1.0;
            constraints.push(LinearConstraint {
                t_coeffs,
                s_coeffs: vec![-1.0],
            });
        }
        Ok(Self {
            t_dim,
            s_dim: 1,
            kind: ConicKind::Standard,
            constraints,
        })
    }

    /// The trace-gap domain for `p` points in complex dimension `n`:
    /// `t = (t_1, …, t_p) ∈ (ℝ^{2n})^p`, `0 ≤ s ≤ min_i t_i¹`.
    pub fn standard_dp(p: usize, n: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(AsymptoticsError::Precondition("p and n must be positive".into()));
        }
        let coords: Vec<usize> = (0..p).map(|i| 2 * n * i).collect();
        Self::standard(2 * n * p, &coords)
    }

    /// `{t₁ ≥ 0, |s_j| ≤ t₁}`: a half-space in `t` times a cube in `s`
    /// growing linearly with `t₁`.
    pub fn halfspace_product(t_dim: usize, s_dim: usize) -> Result<Self> {
        if t_dim == 0 {
            return Err(AsymptoticsError::Precondition("need at least one t-variable".into()));
        }
        let mut e1 = vec![0.0; t_dim];
        e1[0] = 1.0;
        let mut constraints = vec![LinearConstraint {
            t_coeffs: e1.clone(),
            s_coeffs: vec![0.0; s_dim],
        }];
        for j in 0..s_dim {
            for sign in [1.0, -1.0] {
                let mut s_coeffs = vec![0.0; s_dim];
                s_coeffs[j] = sign;
                constraints.push(LinearConstraint {
                    t_coeffs: e1.clone(),
                    s_coeffs,
                });
            }
        }
        Ok(Self {
            t_dim,
            s_dim,
            kind: ConicKind::HalfspaceProduct,
            constraints,
        })
    }

    pub fn custom(t_dim: usize, s_dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.t_coeffs.len() != t_dim || c.s_coeffs.len() != s_dim {
                return Err(AsymptoticsError::Precondition(format!(
                    "constraint has {}+{} coefficients, domain has {t_dim}+{s_dim} variables",
                    c.t_coeffs.len(),
                    c.s_coeffs.len()
                )));
            }
        }
        Ok(Self {
            t_dim,
            s_dim,
            kind: ConicKind::Custom,
            constraints,
        })
    }

    /// All of `ℝ^{t_dim} × ℝ^{s_dim}`. Sections are unbounded, so only the
    /// quadrature oracle (with its cutoff ball) accepts it.
    pub fn whole(t_dim: usize, s_dim: usize) -> Self {
        Self {
            t_dim,
            s_dim,
            kind: ConicKind::Whole,
            constraints: Vec::new(),
        }
    }

    /// `-D = {x : -x ∈ D}`.
    pub fn negated(&self) -> Self {
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect();
        Self {
            constraints: self
                .constraints
                .iter()
                .map(|c| LinearConstraint {
                    t_coeffs: neg(&c.t_coeffs),
                    s_coeffs: neg(&c.s_coeffs),
                })
                .collect(),
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.t_dim + self.s_dim
    }

    pub fn contains(&self, t: &[f64], s: &[f64]) -> bool {
        self.constraints.iter().all(|c| c.value(t, s) >= 0.0)
    }

    /// Whether `D = -D` holds syntactically: every constraint comes with its
    /// negative, so `D` is a linear subspace (or everything).
    pub fn is_symmetric(&self) -> bool {
        let negated = self.negated();
        negated.constraints.iter().all(|c| self.constraints.contains(c))
    }

    /// Box section at `t`; `None` when it is empty.
    ///
    /// Fails if some constraint couples two `s` coordinates.
    pub fn section(&self, t: &[f64]) -> Result<Option<Section>> {
        let mut bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); self.s_dim];
        for c in &self.constraints {
            let a = dot(&c.t_coeffs, t);
            let mut active = c.s_coeffs.iter().enumerate().filter(|(_, &b)| b != 0.0);
            match (active.next(), active.next()) {
                (None, _) => {
                    if a < 0.0 {
                        return Ok(None);
                    }
                }
                (Some((j, &b)), None) => {
                    // a + b s_j ≥ 0
                    let edge = -a / b;
                    if b > 0.0 {
                        bounds[j].0 = bounds[j].0.max(edge);
                    } else {
                        bounds[j].1 = bounds[j].1.min(edge);
                    }
                }
                _ => {
                    return Err(AsymptoticsError::Unsupported(
                        "constraints coupling several s-variables have no box sections".into(),
                    ))
                }
            }
        }
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Ok(None);
        }
        Ok(Some(bounds))
    }

    /// `v_β(t) = ∫_{D_t} s^β ds` in closed form.
    pub fn section_moment(&self, t: &[f64], beta: &[u32]) -> Result<f64> {
        if beta.len() != self.s_dim {
            return Err(AsymptoticsError::Precondition(format!(
                "β has {} entries for {} s-variables",
                beta.len(),
                self.s_dim
            )));
        }
        let Some(section) = self.section(t)? else {
            return Ok(0.0);
        };
        let mut v = 1.0;
        for (&(lo, hi), &b) in section.iter().zip(beta) {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(AsymptoticsError::Precondition(
                    "domain has unbounded sections (need |s| ≤ C|t|)".into(),
                ));
            }
            let m = b as i32 + 1;
            v *= (hi.powi(m) - lo.powi(m)) / m as f64;
        }
        Ok(v)
    }

    /// Sampled estimate of the smallest `C` with `|s| ≤ C|t|` on `D`, from
    /// random directions `t` on the unit sphere. `None` if some sampled
    /// section is unbounded.
    pub fn section_constant(&self, samples: usize, seed: u64) -> Result<Option<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c: f64 = 0.0;
        for _ in 0..samples {
            let t = random_unit(&mut rng, self.t_dim);
            if let Some(section) = self.section(&t)? {
                for (lo, hi) in section {
                    if !lo.is_finite() || !hi.is_finite() {
                        return Ok(None);
                    }
                    c = c.max(lo.abs()).max(hi.abs());
                }
            }
        }
        Ok(Some(c))
    }
}

/// Uniform point on the unit sphere of `ℝ^d` (normalised Gaussian).
pub fn random_unit<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

