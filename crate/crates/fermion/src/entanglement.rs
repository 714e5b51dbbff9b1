//! Entanglement spectrum of a Slater state by enumeration.

use crate::error::{FermionError, Result};
use crate::pmf::check_params;
use toeplab_spectral::compensated_sum;

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// All `2^d` weights `λ_I (1-λ)_{I^c}` of the reduced density operator,
/// in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementSpectrum {
    pub weights: Vec<f64>,
}

impl EntanglementSpectrum {
    /// `-Σ w ln w` with `0 ln 0 = 0`.
    pub fn von_neumann_entropy(&self) -> f64 {
        compensated_sum(
            self.weights
                .iter()
                .filter(|&&w| w > 0.0)
                .map(|&w| -w * w.ln()),
        )
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }
}

pub fn entanglement_spectrum_bruteforce(params: &[f64]) -> Result<EntanglementSpectrum> {
    check_params(params)?;
    if params.len() > BRUTE_FORCE_LIMIT {
        return Err(FermionError::TooLarge {
            what: "brute-force entanglement spectrum",
            limit: BRUTE_FORCE_LIMIT,
            got: params.len(),
        });
    }
    let mut weights = vec![1.0];
    for &l in params {
        let c = 1.0 - l;
        let mut next = Vec::with_capacity(2 * weights.len());
        next.extend(weights.iter().map(|w| w * c));
        next.extend(weights.iter().map(|w| w * l));
        weights = next;
    }
    weights.sort_by(|a, b| b.total_cmp(a));
    Ok(EntanglementSpectrum { weights })
}
