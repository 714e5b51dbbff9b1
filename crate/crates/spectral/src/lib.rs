//! Trace functionals of Toeplitz spectra and the Weyl-law predictions they
//! are compared with: counts, traces `tr f(T)`, entanglement entropy,
//! particle-number cumulants and their generating function, and the lattice
//! sums behind the universal constants.

mod error;
mod lattice;
mod poly;
mod trace;
mod weyl;

pub use error::{Result, SpectralError};
pub use lattice::{
    euler_maclaurin_check, euler_maclaurin_sum, model_variable_cumulant, EulerMaclaurinCheck,
};
pub use poly::{cumulant_polynomial, CumulantPolynomial, MAX_CACHED_DEGREE};
pub use trace::{
    bernoulli_cgf, cgf, cgf_function, compensated_sum, count_eigenvalues, cumulant,
    entanglement_entropy, power_trace, trace_functional, trace_functional_bounded, TraceEstimate,
};
pub use weyl::{
    boundary_scale, fourier_count_law, two_term_weyl, weyl_count, weyl_prediction, weyl_trace,
    TwoTermWeyl, WeylPrediction,
};

use toeplab_specfun::Fn01;

/// `P_ℓ` as a function on `[0, 1]` (Hölder exponent 1, zero at both ends for `ℓ >= 2`).
pub fn cumulant_function(order: usize) -> Fn01 {
    let p = cumulant_polynomial(order);
    let f = Fn01::with_complement(move |t, tc| p.eval_pair(t, tc));
    if order >= 2 {
        f.holder(1.0)
    } else {
        f
    }
}
