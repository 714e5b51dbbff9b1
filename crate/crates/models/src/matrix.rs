//! Toeplitz matrices `G[m][n] = ⟨1_A s_n, s_m⟩` in explicit orthonormal
//! bases, and the dense Hermitian eigensolver.

use crate::closed::{cap_parameter, cylinder_spectrum};
use crate::domain::{DomainKind, Geometry, ModelSpec};
use crate::error::{ModelError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use toeplab_specfun::{ln_beta, ln_gamma, reg_inc_beta_split, reg_inc_gamma_pair};

/// Largest admissible anti-Hermitian part before symmetrization.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

const MAX_GRID: usize = 1 << 16;

/// Assemble the Toeplitz matrix of `1_A` in the model's orthonormal basis.
///
/// Supported: every domain on the sphere (basis `ℓ = 0..=k`), Bargmann-plane
/// disks including shifted ones (basis `n = 0..=cutoff`), and the half
/// cylinder (diagonal). Non-diagonal entries are angular Fourier
/// coefficients of closed-form radial integrals, taken by FFT on a grid
/// that is doubled until no entry moves by more than the assembly tolerance.
pub fn toeplitz_matrix(model: &ModelSpec) -> Result<DMatrix<Complex64>> {
    model.validate()?;
    let k = model.k;
    let cutoff = model.basis_cutoff();
    let tol = model.quadrature.abs_tol.max(1e-15);
    let g = match (&model.geometry, &model.domain.kind) {
        (Geometry::Sphere, _) => sphere_matrix(k, &model.domain.kind, tol)?,
        (Geometry::BargmannPlane, DomainKind::Empty) => DMatrix::zeros(cutoff + 1, cutoff + 1),
        (Geometry::BargmannPlane, DomainKind::Full) => DMatrix::identity(cutoff + 1, cutoff + 1),
        (Geometry::BargmannPlane, DomainKind::Disk { radius }) => {
            bargmann_shifted_disk(k, *radius, Complex64::new(0.0, 0.0), cutoff, tol)?
        }
        (Geometry::BargmannPlane, DomainKind::ShiftedDisk { radius, center }) => {
            bargmann_shifted_disk(k, *radius, *center, cutoff, tol)?
        }
        (Geometry::Cylinder, DomainKind::HalfCylinder) => {
            let s = cylinder_spectrum(k, cutoff)?;
            DMatrix::from_diagonal(&DVector::from_iterator(
                s.len(),
                s.eigenvalues.iter().map(|&v| Complex64::new(v, 0.0)),
            ))
        }
        (Geometry::Cylinder, DomainKind::Empty) => DMatrix::zeros(2 * cutoff + 1, 2 * cutoff + 1),
        (Geometry::Cylinder, DomainKind::Full) => DMatrix::identity(2 * cutoff + 1, 2 * cutoff + 1),
        (geom, kind) => {
            return Err(ModelError::Unsupported(format!(
                "no matrix assembly for {kind:?} on {}",
                geom.name()
            )))
        }
    };
    if model.domain.complemented {
        let d = g.nrows();
        Ok(DMatrix::identity(d, d) - g)
    } else {
        Ok(g)
    }
}

/// Angular Fourier data `ĉ_{s,j} = (1/2π) ∫ F_s(θ) e^{ijθ} dθ` for the
/// real periodic profiles `F_s`, sampled on `m` points.
fn angular_coefficients<F>(profiles: usize, m: usize, profile: &F) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(usize, f64) -> Result<f64> + Sync,
{
    let fft = FftPlanner::<f64>::new().plan_fft_forward(m);
    (0..profiles)
        .into_par_iter()
        .map(|s| {
            let mut buf = (0..m)
                .map(|q| {
                    let theta = 2.0 * std::f64::consts::PI * q as f64 / m as f64;
                    profile(s, theta).map(|v| Complex64::new(v, 0.0))
                })
                .collect::<Result<Vec<_>>>()?;
            fft.process(&mut buf);
            let scale = 1.0 / m as f64;
            // Σ F e^{+ijθ} = conj(X_j) for real F
            Ok(buf.into_iter().map(|c| c.conj() * scale).collect())
        })
        .collect()
}

/// Build the matrix from profiles with doubling of the angular grid.
fn assemble<F, W>(dim: usize, tol: f64, profile: F, weight: W, phase: f64) -> Result<DMatrix<Complex64>>
where
    F: Fn(usize, f64) -> Result<f64> + Sync,
    W: Fn(usize, usize) -> f64,
{
    let profiles = 2 * dim - 1;
    let mut m = (4 * dim).next_power_of_two().max(64);
    let build = |coef: &Vec<Vec<Complex64>>, m: usize| {
        DMatrix::from_fn(dim, dim, |row, col| {
            let s = row + col;
            let j = col as i64 - row as i64;
            let idx = j.rem_euclid(m as i64) as usize;
            let rot = Complex64::from_polar(1.0, j as f64 * phase);
            coef[s][idx] * rot * weight(row, col)
        })
    };
    let mut prev = build(&angular_coefficients(profiles, m, &profile)?, m);
    loop {
        m *= 2;
        if m > MAX_GRID {
            return Err(ModelError::Assembly(format!(
                "angular grid exceeded {MAX_GRID} points without reaching {tol:e}"
            )));
        }
        let cur = build(&angular_coefficients(profiles, m, &profile)?, m);
        let change = (&cur - &prev).iter().map(|c| c.norm()).fold(0.0, f64::max);
        prev = cur;
        if change < tol {
            break;
        }
    }
    Ok(symmetrize(prev))
}

fn symmetrize(g: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Disk of radius `R` centred at `c` (origin inside), basis
/// `s_n = √(k^{n+1}/(2π n!)) z^n e^{-k|z|²/2}`.
///
/// In polar coordinates the radial integral is an incomplete gamma:
/// `G[m][n] = Γ(a)/√(n! m!) · (1/2π) ∫ e^{i(n-m)θ} P(a, k r₊(θ)²) dθ`,
/// `a = (n+m)/2 + 1`, with `r₊(θ)` the boundary distance along the ray.
fn bargmann_shifted_disk(
    k: u32,
    radius: f64,
    center: Complex64,
    cutoff: usize,
    tol: f64,
) -> Result<DMatrix<Complex64>> {
    let d = center.norm();
    if d >= radius {
        return Err(ModelError::Domain("disk must contain the origin".into()));
    }
    let alpha = if d > 0.0 { center.arg() } else { 0.0 };
    let kf = k as f64;
    let dim = cutoff + 1;
    let profile = |s: usize, theta: f64| -> Result<f64> {
        let a = 0.5 * s as f64 + 1.0;
        let sin = theta.sin();
        let r = d * theta.cos() + (radius * radius - d * d * sin * sin).sqrt();
        Ok(reg_inc_gamma_pair(a, kf * r * r)?.0)
    };
    let ln_fact: Vec<f64> = (0..dim).map(|n| ln_gamma(n as f64 + 1.0)).collect();
    let weight = |row: usize, col: usize| {
        let a = 0.5 * (row + col) as f64 + 1.0;
        (ln_gamma(a) - 0.5 * (ln_fact[row] + ln_fact[col])).exp()
    };
    assemble(dim, tol, profile, weight, alpha)
}

/// Sphere, basis `s_ℓ = √((k+1) C(k,ℓ)/2π) z^ℓ/(1+|z|²)^{k/2}`, measure `du dφ`
/// with `u = sin²(θ/2)`. For a region `{θ < θ_max(φ)}` the `u`-integral is an
/// incomplete beta function.
fn sphere_matrix(k: u32, kind: &DomainKind, tol: f64) -> Result<DMatrix<Complex64>> {
    let dim = k as usize + 1;
    let kf = k as f64;
    match kind {
        DomainKind::Empty => return Ok(DMatrix::zeros(dim, dim)),
        DomainKind::Full => return Ok(DMatrix::identity(dim, dim)),
        DomainKind::PolarCap { .. } | DomainKind::StarShaped { .. } => {}
        other => {
            return Err(ModelError::Unsupported(format!("{other:?} on the sphere")));
        }
    }
    let boundary = |phi: f64| -> f64 {
        match kind {
            DomainKind::PolarCap { theta0 } => *theta0,
            DomainKind::StarShaped { boundary } => boundary.theta_max(phi),
            _ => unreachable!(),
        }
    };
    let profile = |s: usize, phi: f64| -> Result<f64> {
        let a = 0.5 * s as f64 + 1.0;
        let b = kf - 0.5 * s as f64 + 1.0;
        let (u, uc) = cap_parameter(boundary(phi));
        Ok(reg_inc_beta_split(u, uc, a, b)?.0)
    };
    let ln_binom: Vec<f64> = (0..dim)
        .map(|n| ln_gamma(kf + 1.0) - ln_gamma(n as f64 + 1.0) - ln_gamma(kf - n as f64 + 1.0))
        .collect();
    let weight = |row: usize, col: usize| {
        let a = 0.5 * (row + col) as f64 + 1.0;
        let b = kf - 0.5 * (row + col) as f64 + 1.0;
        ((kf + 1.0).ln() + 0.5 * (ln_binom[row] + ln_binom[col]) + ln_beta(a, b)).exp()
    };
    assemble(dim, tol, profile, weight, 0.0)
}

fn check_hermitian(h: &DMatrix<Complex64>) -> Result<f64> {
    if h.nrows() != h.ncols() {
        return Err(ModelError::Eigen(format!(
            "matrix is {}x{}, not square",
            h.nrows(),
            h.ncols()
        )));
    }
    let scale = h.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    let mut asym: f64 = 0.0;
    for i in 0..h.nrows() {
        for j in i..h.ncols() {
            asym = asym.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    if asym > HERMITIAN_TOLERANCE * scale {
        return Err(ModelError::NotHermitian { asymmetry: asym });
    }
    Ok(h.norm())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns, same order).
pub fn hermitian_eigen(h: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let norm = check_hermitian(h)?;
    let d = h.nrows();
    if d == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let sym = symmetrize(h.clone());
    let eig = nalgebra::SymmetricEigen::try_new(sym.clone(), f64::EPSILON, 100 * d.max(10))
        .ok_or_else(|| ModelError::Eigen("QR iteration budget exhausted".into()))?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
    for &c in &[0, d / 2, d - 1] {
        let v = vectors.column(c);
        let residual = (&sym * v - v * Complex64::new(values[c], 0.0)).norm();
        if residual > 1e-8 * norm.max(1.0) {
            return Err(ModelError::Eigen(format!(
                "residual {residual:e} for eigenpair {c}"
            )));
        }
    }
    Ok((values, vectors))
}

/// Full real spectrum of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    hermitian_eigen(h).map(|(v, _)| v)
}
