//! Coefficients `b_ℓ` of `I_k = k^{-(n̂+p̂)/2} Σ b_ℓ k^{-ℓ/2}` from Taylor data.

use crate::domain::ConicDomain;
use crate::error::{AsymptoticsError, Result};
use crate::moments::{conic_moment, MomentEstimate, MomentOptions};
use crate::phase::{PhaseData, TaylorMap};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSeries {
    /// `I_k ~ k^{-leading_power} Σ b_ℓ k^{-ℓ/2}`.
    pub leading_power: f64,
    pub coefficients: Vec<Complex64>,
    /// Propagated moment errors, one per coefficient.
    pub errors: Vec<f64>,
}

impl AsymptoticSeries {
    /// Partial sum `k^{-leading_power} Σ_{ℓ ≤ order} b_ℓ k^{-ℓ/2}`.
    pub fn partial_sum(&self, k: f64, order: usize) -> Complex64 {
        let u = k.powf(-0.5);
        let mut s = Complex64::new(0.0, 0.0);
        for (l, b) in self.coefficients.iter().take(order + 1).enumerate() {
            s += b * u.powi(l as i32);
        }
        s * k.powf(-self.leading_power)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "leading_power": self.leading_power,
            "coefficients": self.coefficients.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
            "errors": self.errors,
            "condition_number": serde_json::Value::Null,
        })
    }
}

/// One term `a_{m,γ}` of the composite expansion of `a·e^{-k r}`: it
/// multiplies `k^{-m} x^γ`, and after rescaling contributes to
/// `b_ℓ`, `ℓ = 2m + |γ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeTerm {
    pub m: i32,
    pub exponents: Vec<u32>,
    pub coefficient: Complex64,
}

impl CompositeTerm {
    pub fn order(&self) -> i32 {
        2 * self.m + self.exponents.iter().sum::<u32>() as i32
    }
}

/// Taylor degree both maps must be known to for `b_0..b_N`.
pub fn required_degree(n: usize) -> u32 {
    n as u32 + 3
}

/// The composite coefficients `a_{m,γ}` with `ℓ = 2m + |γ| ≤ order`,
/// from `a · Σ_j (-k r)^j / j!` (so `m = -j`).
pub fn composite_coefficients(
    phase: &PhaseData,
    amplitude: &TaylorMap,
    order: usize,
) -> Result<Vec<CompositeTerm>> {
    let vars = phase.t_dim() + phase.s_dim;
    if amplitude.vars != vars {
        return Err(AsymptoticsError::Precondition(format!(
            "amplitude has {} variables, phase has {vars}",
            amplitude.vars
        )));
    }
    let needed = required_degree(order);
    if !phase.remainder.known_to(needed) {
        return Err(AsymptoticsError::InsufficientDegree {
            what: "phase",
            needed,
            got: phase.remainder.degree.unwrap_or(0),
        });
    }
    if !amplitude.known_to(needed) {
        return Err(AsymptoticsError::InsufficientDegree {
            what: "amplitude",
            needed,
            got: amplitude.degree.unwrap_or(0),
        });
    }
    let n = order as u32;
    let mut terms = Vec::new();
    // r^j / j!, each factor of degree ≥ 3, so j ≤ ℓ ≤ N
    let mut power = TaylorMap::constant(vars, 1.0);
    let mut factorial = 1.0;
    for j in 0..=n {
        if j > 0 {
            factorial *= j as f64;
            power = power.mul_truncated(&phase.remainder, n + 2 * j);
        }
        if power.terms.is_empty() {
            break;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let product = amplitude
            .mul_truncated(&power, n + 2 * j)
            .scaled((sign / factorial).into());
        for (e, c) in product.terms {
            terms.push(CompositeTerm {
                m: -(j as i32),
                exponents: e,
                coefficient: c,
            });
        }
    }
    if let Some(bad) = terms.iter().find(|t| t.order() < 0) {
        return Err(AsymptoticsError::Precondition(format!(
            "composite term of negative order {} (remainder not third order?)",
            bad.order()
        )));
    }
    Ok(terms)
}

/// `b_ℓ = Σ_{2m+|α|+|β|=ℓ} a_{m,α,β} I(α, β)` for `ℓ = 0..=order`.
pub fn series_coefficients(
    phase: &PhaseData,
    amplitude: &TaylorMap,
    domain: &ConicDomain,
    order: usize,
    options: &MomentOptions,
) -> Result<AsymptoticSeries> {
    if domain.t_dim != phase.t_dim() || domain.s_dim != phase.s_dim {
        return Err(AsymptoticsError::Precondition(format!(
            "phase lives on {}+{} variables, domain on {}+{}",
            phase.t_dim(),
            phase.s_dim,
            domain.t_dim,
            domain.s_dim
        )));
    }
    let terms = composite_coefficients(phase, amplitude, order)?;
    let t_dim = domain.t_dim;
    let exponents: Vec<Vec<u32>> = terms
        .iter()
        .map(|t| t.exponents.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    // one derived seed per distinct moment, in sorted exponent order
    let moments: BTreeMap<Vec<u32>, MomentEstimate> = exponents
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let opts = MomentOptions {
                seed: options.seed.wrapping_add(i as u64),
                ..*options
            };
            conic_moment(&e[..t_dim], &e[t_dim..], &phase.q, domain, &opts).map(|m| (e.clone(), m))
        })
        .collect::<Result<_>>()?;
    let mut coefficients = vec![Complex64::new(0.0, 0.0); order + 1];
    let mut variances = vec![0.0; order + 1];
    for t in &terms {
        let l = t.order() as usize;
        if l > order {
            continue;
        }
        let m = &moments[&t.exponents];
        coefficients[l] += t.coefficient * m.value;
        variances[l] += (t.coefficient.norm() * m.error).powi(2);
    }
    Ok(AsymptoticSeries {
        leading_power: domain.dim() as f64 / 2.0,
        coefficients,
        errors: variances.into_iter().map(f64::sqrt).collect(),
    })
}
