//! Truncated Toeplitz matrices of indicator functions of arcs of the circle.

use crate::error::{ModelError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// The arc `[start, start + length]` of `ℝ/2πℤ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArc {
    pub start: f64,
    pub length: f64,
}

impl CircleArc {
    pub fn new(start: f64, length: f64) -> Self {
        Self { start, length }
    }
}

fn check_arcs(arcs: &[CircleArc]) -> Result<()> {
    let total: f64 = arcs.iter().map(|a| a.length).sum();
    if arcs.iter().any(|a| !(a.length > 0.0) || !a.start.is_finite()) {
        return Err(ModelError::Domain("arcs need finite start and positive length".into()));
    }
    if total > 2.0 * PI * (1.0 + 1e-14) {
        return Err(ModelError::OverlappingArcs(format!(
            "total length {total} exceeds 2π"
        )));
    }
    let mut sorted: Vec<(f64, f64)> = arcs
        .iter()
        .map(|a| (a.start.rem_euclid(2.0 * PI), a.length))
        .collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (i, &(s, l)) in sorted.iter().enumerate() {
        let next = if i + 1 < sorted.len() {
            sorted[i + 1].0
        } else {
            sorted[0].0 + 2.0 * PI
        };
        if sorted.len() > 1 && s + l > next + 1e-12 {
            return Err(ModelError::OverlappingArcs(format!(
                "arc starting at {s} runs past the arc starting at {next}"
            )));
        }
    }
    Ok(())
}

/// `(k+1)×(k+1)` matrix `M[ℓ][m] = (1/2π) ∫_A e^{i(m-ℓ)x} dx` for a union of
/// disjoint arcs `A`.
///
/// Each arc of length `L` centred at `c` contributes
/// `e^{ijc} sin(jL/2)/(πj)` at `j = m - ℓ` (and `L/2π` on the diagonal).
pub fn fourier_interval_matrix(k: usize, arcs: &[CircleArc]) -> Result<DMatrix<Complex64>> {
    check_arcs(arcs)?;
    let coeff = |j: i64| -> Complex64 {
        arcs.iter()
            .map(|a| {
                if j == 0 {
                    Complex64::new(a.length / (2.0 * PI), 0.0)
                } else {
                    let jf = j as f64;
                    let c = a.start + 0.5 * a.length;
                    Complex64::from_polar((0.5 * jf * a.length).sin() / (PI * jf), jf * c)
                }
            })
            .sum()
    };
    let table: Vec<Complex64> = (-(k as i64)..=(k as i64)).map(coeff).collect();
    Ok(DMatrix::from_fn(k + 1, k + 1, |l, m| {
        table[(m as i64 - l as i64 + k as i64) as usize]
    }))
}

/// Number of boundary points of a union of arcs (a full circle has none).
pub fn arc_boundary_points(arcs: &[CircleArc]) -> usize {
    let total: f64 = arcs.iter().map(|a| a.length).sum();
    if (total - 2.0 * PI).abs() < 1e-12 {
        0
    } else {
        2 * arcs.len()
    }
}
