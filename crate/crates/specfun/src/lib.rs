//! Special functions and one-dimensional quadrature.
//!
//! The central objects are the Gaussian profile
//! `er(x) = π^{-1/2} ∫_{-∞}^x e^{-t²} dt`, its inverse, the density
//! `δ(t) = √π exp(er⁻¹(t)²)` and the boundary functional
//! `I(f) = ∫_ℝ f(er(x)) dx = ∫_0^1 f(t) δ(t) dt`.

mod beta;
mod er;
mod error;
mod functional;
mod gamma;
pub mod quad;

pub use beta::{ln_beta, reg_inc_beta, reg_inc_beta_pair, reg_inc_beta_split};
pub use er::{density_delta, density_delta_pair, er, er_inv, er_pair, SQRT_PI};
pub use error::{Result, SpecfunError};
pub use functional::{integral_i, integral_i_routes, Fn01, QuadratureSpec, Routes, Rule};
pub use gamma::{ln_gamma, reg_inc_gamma, reg_inc_gamma_pair};
