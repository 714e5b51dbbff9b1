//! Least-squares extraction of expansion coefficients from values on a
//! `k`-ladder.

use crate::error::{AsymptoticsError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde_json::json;

/// Most coefficients `fit_expansion` will extract.
pub const MAX_FIT_TERMS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub leading_power: f64,
    /// Exponents `e_j` of the basis `k^{-e_j}`.
    pub powers: Vec<f64>,
    pub coefficients: Vec<Complex64>,
    /// One-sigma errors from the residual variance.
    pub errors: Vec<f64>,
    /// Condition number of the scaled design matrix.
    pub condition_number: f64,
    /// `k^{leading_power}·(I_k - fit)` at each ladder point.
    pub residuals: Vec<Complex64>,
}

impl FitReport {
    pub fn residual_norm(&self) -> f64 {
        self.residuals.iter().map(|r| r.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "leading_power": self.leading_power,
            "coefficients": self.coefficients.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
            "errors": self.errors,
            "condition_number": self.condition_number,
        })
    }
}

/// Fit `I_k ≈ Σ_j c_j k^{-powers_j}`.
///
/// The design is built on `y_k = k^{leading}·I_k` and `u = k^{-1/2}`, so
/// the columns are `u^{2(powers_j - leading)}`, which keeps the matrix
/// Vandermonde-like and well scaled. Needs two more points than unknowns.
pub fn fit_powers(values: &[Complex64], ks: &[f64], leading: f64, powers: &[f64]) -> Result<FitReport> {
    let (m, n) = (values.len(), powers.len());
    if ks.len() != m {
        return Err(AsymptoticsError::Precondition(format!(
            "{m} values for {} ladder points",
            ks.len()
        )));
    }
    if n == 0 || m < n + 2 {
        return Err(AsymptoticsError::Precondition(format!(
            "fitting {n} terms needs at least {} ladder points, got {m}",
            n + 2
        )));
    }
    if ks.iter().any(|&k| !(k > 0.0)) {
        return Err(AsymptoticsError::Precondition("ladder values must be positive".into()));
    }
    let a = DMatrix::from_fn(m, n, |i, j| ks[i].powf(leading - powers[j]));
    let y: Vec<Complex64> = values.iter().zip(ks).map(|(v, &k)| v * k.powf(leading)).collect();
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition_number = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !condition_number.is_finite() || condition_number > 1e12 {
        return Err(AsymptoticsError::IllConditioned(format!(
            "condition number {condition_number:e}"
        )));
    }
    let solve = |part: &dyn Fn(&Complex64) -> f64| -> Result<DVector<f64>> {
        let rhs = DVector::from_iterator(m, y.iter().map(part));
        svd.solve(&rhs, 0.0)
            .map_err(|e| AsymptoticsError::IllConditioned(e.to_string()))
    };
    let re = solve(&|c| c.re)?;
    let im = solve(&|c| c.im)?;
    let coefficients: Vec<Complex64> = (0..n).map(|j| Complex64::new(re[j], im[j])).collect();
    let fitted_re = &a * &re;
    let fitted_im = &a * &im;
    let residuals: Vec<Complex64> = (0..m)
        .map(|i| y[i] - Complex64::new(fitted_re[i], fitted_im[i]))
        .collect();
    let dof = (m - n) as f64;
    let sigma2 = residuals.iter().map(|r| r.norm_sqr()).sum::<f64>() / dof;
    // diag((AᵀA)^{-1}) = Σ_k V_{jk}² / σ_k²
    let v_t = svd.v_t.as_ref().expect("requested V");
    let errors = (0..n)
        .map(|j| {
            let d: f64 = (0..svd.singular_values.len())
                .map(|s| (v_t[(s, j)] / svd.singular_values[s]).powi(2))
                .sum();
            (sigma2 * d).sqrt()
        })
        .collect();
    Ok(FitReport {
        leading_power: leading,
        powers: powers.to_vec(),
        coefficients,
        errors,
        condition_number,
        residuals,
    })
}

/// Fit `I_k ≈ k^{-leading} Σ_{ℓ<n_terms} b_ℓ k^{-ℓ/2}` (at most four terms).
pub fn fit_expansion(values: &[Complex64], ks: &[f64], leading_power: f64, n_terms: usize) -> Result<FitReport> {
    if n_terms > MAX_FIT_TERMS {
        return Err(AsymptoticsError::IllConditioned(format!(
            "at most {MAX_FIT_TERMS} coefficients can be extracted, asked for {n_terms}"
        )));
    }
    let powers: Vec<f64> = (0..n_terms).map(|l| leading_power + 0.5 * l as f64).collect();
    fit_powers(values, ks, leading_power, &powers)
}
