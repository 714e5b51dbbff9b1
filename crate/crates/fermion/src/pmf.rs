//! Exact law of a sum of independent Bernoulli variables.

use crate::error::{FermionError, Result};
use twofloat::TwoFloat;
use std::fmt::Write;
use toeplab_spectral::compensated_sum;

/// Highest cumulant order computed from PMF moments.
pub const PMF_CUMULANT_LIMIT: usize = 8;

/// Poisson-binomial law of `Σ εᵢ`, `εᵢ ~ Bernoulli(λᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonBinomialDist {
    pub params: Vec<f64>,
    /// `pmf[j] = P(N = j)`, `j = 0..=d`.
    pub pmf: Vec<f64>,
}

pub(crate) fn check_params(params: &[f64]) -> Result<()> {
    for (index, &value) in params.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(FermionError::OutOfRange { index, value });
        }
    }
    Ok(())
}

/// PMF by iterated convolution with `(1 - λ) + λz`.
pub fn poisson_binomial(params: &[f64]) -> Result<PoissonBinomialDist> {
    let pairs: Vec<(f64, f64)> = params.iter().map(|&l| (l, 1.0 - l)).collect();
    check_params(params)?;
    Ok(PoissonBinomialDist {
        params: params.to_vec(),
        pmf: convolve(&pairs),
    })
}

/// As [`poisson_binomial`], from `(λ, 1 - λ)` pairs whose complements are
/// known to full precision.
pub fn poisson_binomial_pairs(pairs: &[(f64, f64)]) -> Result<PoissonBinomialDist> {
    let params: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    check_params(&params)?;
    Ok(PoissonBinomialDist {
        params,
        pmf: convolve(pairs),
    })
}

fn convolve(pairs: &[(f64, f64)]) -> Vec<f64> {
    let mut pmf = Vec::with_capacity(pairs.len() + 1);
    pmf.push(1.0);
    for &(l, c) in pairs {
        pmf.push(0.0);
        for j in (1..pmf.len()).rev() {
            pmf[j] = c * pmf[j] + l * pmf[j - 1];
        }
        pmf[0] *= c;
    }
    pmf
}

impl PoissonBinomialDist {
    pub fn mean(&self) -> f64 {
        compensated_sum(self.params.iter().copied())
    }

    pub fn variance(&self) -> f64 {
        compensated_sum(self.params.iter().map(|l| l * (1.0 - l)))
    }

    /// `P(N <= j)`, `j = 0..=d`.
    pub fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.pmf
            .iter()
            .map(|p| {
                acc += p;
                acc.min(1.0)
            })
            .collect()
    }

    /// `j,probability` rows with a versioned header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# schema=v1\n# poisson-binomial pmf\ncount,probability\n");
        for (j, p) in self.pmf.iter().enumerate() {
            let _ = writeln!(out, "{j},{p:.16e}");
        }
        out
    }
}

/// `ℓ`-th cumulant from the central moments of the PMF, `ℓ <= 8`.
///
/// Uses `κ_n = μ_n - Σ_{m=2}^{n-2} C(n-1, m-1) κ_m μ_{n-m}` on central
/// moments `μ`. The recursion cancels about `σ^ℓ` down to `κ_ℓ`, so the PMF
/// is rebuilt in double-double precision and the moments are taken there;
/// beyond order 8 the spectral route must be used.
pub fn pmf_cumulant(dist: &PoissonBinomialDist, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(FermionError::Domain("cumulant order must be at least 1".into()));
    }
    if order > PMF_CUMULANT_LIMIT {
        return Err(FermionError::Precision {
            order,
            limit: PMF_CUMULANT_LIMIT,
        });
    }
    let zero = TwoFloat::from(0.0);
    let mut pmf = vec![TwoFloat::from(1.0)];
    for &l in &dist.params {
        let l = TwoFloat::from(l);
        let c = TwoFloat::from(1.0) - l;
        pmf.push(zero);
        for j in (1..pmf.len()).rev() {
            pmf[j] = c * pmf[j] + l * pmf[j - 1];
        }
        pmf[0] = pmf[0] * c;
    }
    let mean = pmf
        .iter()
        .enumerate()
        .fold(zero, |acc, (j, &p)| acc + p * j as f64);
    if order == 1 {
        return Ok(mean.into());
    }
    let mut mu = vec![zero; order + 1];
    for (j, &p) in pmf.iter().enumerate() {
        let x = TwoFloat::from(j as f64) - mean;
        let mut power = p;
        for m in mu.iter_mut() {
            *m = *m + power;
            power = power * x;
        }
    }
    let binom = |n: usize, r: usize| (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    let mut kappa = vec![zero; order + 1];
    for n in 2..=order {
        let mut v = mu[n];
        for m in 2..n.saturating_sub(1) {
            v = v - kappa[m] * mu[n - m] * binom(n - 1, m - 1);
        }
        kappa[n] = v;
    }
    Ok(kappa[order].into())
}
