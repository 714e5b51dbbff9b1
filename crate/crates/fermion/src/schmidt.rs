//! Overlap structure of an eigen-frame of `T_A` split by the projector `1_A`.

use crate::error::{FermionError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest tolerated deviation in the Gram checks.
pub const SCHMIDT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtReport {
    /// Diagonal of the Gram matrix of `P sᵢ`, i.e. `⟨P sᵢ, sᵢ⟩`.
    pub inside_norms: Vec<f64>,
    /// Largest off-diagonal entry of the Gram matrix of `P sᵢ`.
    pub inside_off_diagonal: f64,
    /// Largest off-diagonal entry of the Gram matrix of `(1-P) sᵢ`.
    pub outside_off_diagonal: f64,
    /// Largest `|⟨P sᵢ, P sᵢ⟩ - λᵢ|` and `|⟨(1-P) sᵢ, (1-P) sᵢ⟩ - (1-λᵢ)|`.
    pub diagonal_error: f64,
    pub pass: bool,
}

/// Check that for an orthonormal eigen-frame `sᵢ` (columns of `frame`) of
/// the compression of `projector`, the Gram matrices of `P sᵢ` and
/// `(1-P) sᵢ` are `diag(λᵢ)` and `diag(1-λᵢ)`.
pub fn schmidt_overlap_check(
    frame: &DMatrix<Complex64>,
    projector: &DMatrix<Complex64>,
    eigenvalues: &[f64],
) -> Result<SchmidtReport> {
    let d = frame.ncols();
    if projector.nrows() != frame.nrows() || projector.ncols() != frame.nrows() || eigenvalues.len() != d {
        return Err(FermionError::Domain(format!(
            "shape mismatch: frame {}x{}, projector {}x{}, {} eigenvalues",
            frame.nrows(),
            frame.ncols(),
            projector.nrows(),
            projector.ncols(),
            eigenvalues.len()
        )));
    }
    let gram = frame.adjoint() * frame;
    let deviation = (&gram - DMatrix::identity(d, d)).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if deviation > SCHMIDT_TOLERANCE {
        return Err(FermionError::FrameNotOrthonormal { deviation });
    }
    let inside = projector * frame;
    let outside = frame - &inside;
    let g_in = inside.adjoint() * &inside;
    let g_out = outside.adjoint() * &outside;
    let off = |g: &DMatrix<Complex64>| {
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    m = m.max(g[(i, j)].norm());
                }
            }
        }
        m
    };
    let mut diagonal_error: f64 = 0.0;
    for (i, &l) in eigenvalues.iter().enumerate() {
        diagonal_error = diagonal_error
            .max((g_in[(i, i)].re - l).abs())
            .max((g_out[(i, i)].re - (1.0 - l)).abs());
    }
    let inside_off_diagonal = off(&g_in);
    let outside_off_diagonal = off(&g_out);
    Ok(SchmidtReport {
        inside_norms: (0..d).map(|i| g_in[(i, i)].re).collect(),
        inside_off_diagonal,
        outside_off_diagonal,
        diagonal_error,
        pass: inside_off_diagonal.max(outside_off_diagonal).max(diagonal_error) <= SCHMIDT_TOLERANCE,
    })
}
