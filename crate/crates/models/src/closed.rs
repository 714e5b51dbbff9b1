//! Closed-form spectra: cylinder, Bargmann disk and annulus, sphere caps.

use crate::domain::{DomainKind, DomainSpec};
use crate::error::{ModelError, Result};
use crate::spectrum::{Spectrum, SpectrumInfo, TailBound, TailSide};
use toeplab_specfun::{er_pair, reg_inc_beta_split, reg_inc_gamma_pair};

/// Largest tail bound tolerated when a cutoff is accepted.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Default cylinder cutoff `⌈10√k⌉ + 20`.
pub fn cylinder_cutoff(k: u32) -> usize {
    (10.0 * (k as f64).sqrt()).ceil() as usize + 20
}

/// Default Bargmann cutoff `⌈5kR²⌉ + 40` for a domain inside the disk of radius `reach`.
pub fn bargmann_cutoff(k: u32, reach: f64) -> usize {
    (5.0 * k as f64 * reach * reach).ceil() as usize + 40
}

/// Half-cylinder spectrum `{er(ℓ/√k) : |ℓ| ≤ ℓ_max}`, each simple.
pub fn cylinder_spectrum(k: u32, l_max: usize) -> Result<Spectrum> {
    if k < 1 {
        return Err(ModelError::Domain("k must be at least 1".into()));
    }
    let sk = (k as f64).sqrt();
    if (l_max as f64) < 10.0 * sk {
        return Err(ModelError::CutoffTooSmall {
            cutoff: l_max,
            reason: format!("cylinder needs ℓ_max >= 10√k = {:.1}", 10.0 * sk),
        });
    }
    let l = l_max as i64;
    let pairs: Vec<(f64, f64)> = (-l..=l).map(|j| er_pair(j as f64 / sk)).collect();
    // omitted: er(-x) at x = (ℓ_max+1)/√k, successive ratios below e^{-2x/√k}
    let x = (l_max as f64 + 1.0) / sk;
    let first = er_pair(-x).0;
    let ratio = (-2.0 * x / sk).exp();
    check_tail(l_max, first, "er tail")?;
    let tail = vec![
        TailBound {
            side: TailSide::NearZero,
            first,
            ratio,
        },
        TailBound {
            side: TailSide::NearOne,
            first,
            ratio,
        },
    ];
    Spectrum::from_pairs(
        pairs,
        SpectrumInfo {
            model: "cylinder".into(),
            k,
            complex_dim: 1,
            domain: DomainSpec::half_cylinder(),
            exact: true,
            tail,
        },
    )
}

fn check_tail(cutoff: usize, first: f64, what: &str) -> Result<()> {
    if first > TAIL_TOLERANCE {
        return Err(ModelError::CutoffTooSmall {
            cutoff,
            reason: format!("{what} {first:e} exceeds {TAIL_TOLERANCE:e}"),
        });
    }
    Ok(())
}

/// Bound for `P(n+1, x)`, `n > n_max`: successive ratios below `x/(n_max+3)`.
fn gamma_tail(n_max: usize, x: f64) -> Result<TailBound> {
    let first = reg_inc_gamma_pair(n_max as f64 + 2.0, x)?.0;
    Ok(TailBound {
        side: TailSide::NearZero,
        first,
        ratio: (x / (n_max as f64 + 3.0)).min(1.0),
    })
}

/// Disk `{|z| < R}` in the Bargmann plane: `λ_n = P(n+1, kR²)`, `n = 0..=n_max`.
pub fn bargmann_disk_spectrum(k: u32, radius: f64, n_max: usize) -> Result<Spectrum> {
    let domain = DomainSpec::disk(radius)?;
    let x = k as f64 * radius * radius;
    if (n_max as f64) < 5.0 * x {
        return Err(ModelError::CutoffTooSmall {
            cutoff: n_max,
            reason: format!("Bargmann disk needs n_max >= 5kR² = {:.1}", 5.0 * x),
        });
    }
    let pairs = (0..=n_max)
        .map(|n| reg_inc_gamma_pair(n as f64 + 1.0, x).map_err(ModelError::from))
        .collect::<Result<Vec<_>>>()?;
    let tail = gamma_tail(n_max, x)?;
    check_tail(n_max, tail.first, "incomplete gamma tail")?;
    Spectrum::from_pairs(
        pairs,
        SpectrumInfo {
            model: "bargmann_plane".into(),
            k,
            complex_dim: 1,
            domain,
            exact: true,
            tail: vec![tail],
        },
    )
}

/// Annulus `{R₁ < |z| < R₂}`: `λ_n = P(n+1, kR₂²) - P(n+1, kR₁²)`.
pub fn bargmann_annulus_spectrum(k: u32, inner: f64, outer: f64, n_max: usize) -> Result<Spectrum> {
    let domain = DomainSpec::annulus(inner, outer)?;
    let x1 = k as f64 * inner * inner;
    let x2 = k as f64 * outer * outer;
    if (n_max as f64) < 5.0 * x2 {
        return Err(ModelError::CutoffTooSmall {
            cutoff: n_max,
            reason: format!("annulus needs n_max >= 5kR₂² = {:.1}", 5.0 * x2),
        });
    }
    let mut pairs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let a = n as f64 + 1.0;
        let (p1, q1) = reg_inc_gamma_pair(a, x1)?;
        let (p2, q2) = reg_inc_gamma_pair(a, x2)?;
        // subtract whichever pair is small to avoid cancellation
        let lambda = if p2 < 0.5 { p2 - p1 } else { q1 - q2 };
        pairs.push((lambda, q2 + p1));
    }
    let tail = gamma_tail(n_max, x2)?;
    check_tail(n_max, tail.first, "incomplete gamma tail")?;
    Spectrum::from_pairs(
        pairs,
        SpectrumInfo {
            model: "bargmann_plane".into(),
            k,
            complex_dim: 1,
            domain,
            exact: true,
            tail: vec![tail],
        },
    )
}

/// Cap parameter `u₀ = sin²(θ₀/2)` and its complement `cos²(θ₀/2)`.
///
/// On the sphere of area 2π the measure is `du dφ` with `u = sin²(θ/2)`,
/// so the cap `{θ < θ₀}` has area `2π u₀`.
pub fn cap_parameter(theta0: f64) -> (f64, f64) {
    let s = (0.5 * theta0).sin();
    let c = (0.5 * theta0).cos();
    (s * s, c * c)
}

/// Polar cap `{θ < θ₀}` on the sphere: `λ_ℓ = I_{u₀}(ℓ+1, k-ℓ+1)`, `ℓ = 0..=k`.
pub fn sphere_cap_spectrum(k: u32, theta0: f64) -> Result<Spectrum> {
    let domain = DomainSpec::polar_cap(theta0)?;
    let (u0, u0c) = cap_parameter(theta0);
    let pairs = (0..=k)
        .map(|l| {
            reg_inc_beta_split(u0, u0c, l as f64 + 1.0, (k - l) as f64 + 1.0)
                .map_err(ModelError::from)
        })
        .collect::<Result<Vec<_>>>()?;
    Spectrum::from_pairs(
        pairs,
        SpectrumInfo {
            model: "sphere".into(),
            k,
            complex_dim: 1,
            domain,
            exact: true,
            tail: Vec::new(),
        },
    )
}

/// All-zero or all-one spectrum of `size` eigenvalues.
pub(crate) fn degenerate_spectrum(
    model: &str,
    k: u32,
    domain: DomainSpec,
    size: usize,
) -> Result<Spectrum> {
    let full = matches!(domain.kind, DomainKind::Full) != domain.complemented;
    let pair = if full { (1.0, 0.0) } else { (0.0, 1.0) };
    Spectrum::from_pairs(
        vec![pair; size],
        SpectrumInfo {
            model: model.into(),
            k,
            complex_dim: 1,
            domain,
            exact: true,
            tail: Vec::new(),
        },
    )
}
