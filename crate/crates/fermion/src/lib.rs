//! Particle-number statistics of the free-fermion state filling the
//! spectral subspace of `T_A`: the exact Poisson-binomial law, reproducible
//! sampling, the entanglement spectrum by enumeration, and checks of the
//! central limit theorem and the tail bound.

mod clt;
mod entanglement;
mod error;
mod pmf;
mod sample;
mod schmidt;

pub use clt::{
    clt_check, critical_exponent, dkw_radius, predicted_variance, rung_seed, tail_check,
    tail_exceedances, CltReport, CltRow, TailReport,
};
pub use entanglement::{entanglement_spectrum_bruteforce, EntanglementSpectrum, BRUTE_FORCE_LIMIT};
pub use error::{FermionError, Result};
pub use pmf::{
    pmf_cumulant, poisson_binomial, poisson_binomial_pairs, PoissonBinomialDist,
    PMF_CUMULANT_LIMIT,
};
pub use sample::{block_rng, sample_count, SAMPLE_BLOCK};
pub use schmidt::{schmidt_overlap_check, SchmidtReport, SCHMIDT_TOLERANCE};

/// One sample per line under a versioned header.
pub fn samples_to_csv(samples: &[u32]) -> String {
    let mut out = String::from("# schema=v1\n# particle-number samples\ncount\n");
    for s in samples {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}
