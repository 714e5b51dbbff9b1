//! Degenerate Laplace asymptotics on conic domains.
//!
//! For `I_k = ∫_D e^{-kφ} a` with `φ = q(t) + O(|(t,s)|³)`, `Re q > 0` and a
//! cone `D` with bounded sections, `I_k = k^{-(n̂+p̂)/2} Σ b_ℓ k^{-ℓ/2}`.
//! This crate computes the `b_ℓ` from Taylor data, evaluates `I_k`
//! directly, fits expansions from ladders, and evaluates the universal
//! constants `C_{p,n}` of the trace asymptotics by two routes.

mod constants;
mod domain;
mod error;
mod fit;
mod moments;
mod oracle;
mod phase;
mod series;

pub use constants::{
    universal_constant, universal_constant_route_a, universal_constant_route_b, UniversalConstant,
    AGREEMENT_SIGMAS,
};
pub use domain::{random_unit, ConicDomain, ConicKind, LinearConstraint, Section};
pub use error::{AsymptoticsError, Result};
pub use fit::{fit_expansion, fit_powers, FitReport, MAX_FIT_TERMS};
pub use moments::{
    conic_moment, MomentEstimate, MomentMethod, MomentOptions, SOBOL_MAX_DIM, SOBOL_MAX_POINTS,
};
pub use oracle::{quadrature_oracle, OracleOptions, ORACLE_MAX_DIM};
pub use phase::{ModelQuadraticForm, PhaseData, QuadraticForm, TaylorMap};
pub use series::{
    composite_coefficients, required_degree, series_coefficients, AsymptoticSeries, CompositeTerm,
};
pub use toeplab_specfun::quad::Estimate;
