use crate::error::{ModelError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;
use toeplab_specfun::QuadratureSpec;

/// Riemannian length of a unit Euclidean segment in the Bargmann plane.
///
/// The plane carries the weight `e^{-k|z|²}` and Kähler form `ω = 2 dx∧dy`,
/// so lengths are `√2` times Euclidean ones and `Π_k(z, z) = k/2π`.
pub const BARGMANN_METRIC_SCALE: f64 = std::f64::consts::SQRT_2;

/// Radius of the round sphere of total area 2π, the area forced by
/// `dim H_k = k + 1 = (k/2π)·vol + O(1)`.
pub const SPHERE_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Solvable geometries.
///
/// * `Cylinder`: `ℝ × (ℝ/2πℤ)` with flat metric `dx² + dy²`, weight `e^{-kx²}`;
///   the sections `e^{ℓz}` are orthogonal and concentrate at `x = ℓ/k`.
/// * `BargmannPlane`: `ℂ` with weight `e^{-k|z|²}` and measure `2 dx dy`.
/// * `Sphere`: `ℂP¹` with the Fubini–Study metric scaled to area 2π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Cylinder,
    BargmannPlane,
    Sphere,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::Cylinder => "cylinder",
            Geometry::BargmannPlane => "bargmann_plane",
            Geometry::Sphere => "sphere",
        }
    }
}

/// Polar boundary `θ_max(φ)` of a sphere region that is star-shaped about
/// the north pole: the region is `{(θ, φ) : θ < θ_max(φ)}`.
#[derive(Clone)]
pub struct PolarBoundary(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl PolarBoundary {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn theta_max(&self, phi: f64) -> f64 {
        (self.0)(phi)
    }
}

impl fmt::Debug for PolarBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PolarBoundary(..)")
    }
}

#[derive(Debug, Clone)]
pub enum DomainKind {
    Empty,
    Full,
    /// `{x > 0}` on the cylinder.
    HalfCylinder,
    Disk {
        radius: f64,
    },
    Annulus {
        inner: f64,
        outer: f64,
    },
    /// Disk of the given radius centred at `center`; the origin must lie inside.
    ShiftedDisk {
        radius: f64,
        center: Complex64,
    },
    /// `{θ < θ₀}` around the north pole.
    PolarCap {
        theta0: f64,
    },
    StarShaped {
        boundary: PolarBoundary,
    },
}

/// A domain `A` together with the Riemannian volume of `∂A`.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub boundary_volume: f64,
    /// Use `A^c` instead of `A`.
    pub complemented: bool,
}

impl DomainSpec {
    fn plain(kind: DomainKind, boundary_volume: f64) -> Self {
        Self {
            kind,
            boundary_volume,
            complemented: false,
        }
    }

    pub fn empty() -> Self {
        Self::plain(DomainKind::Empty, 0.0)
    }

    pub fn full() -> Self {
        Self::plain(DomainKind::Full, 0.0)
    }

    /// Half cylinder; its boundary is one circle of length 2π.
    pub fn half_cylinder() -> Self {
        Self::plain(DomainKind::HalfCylinder, 2.0 * PI)
    }

    pub fn disk(radius: f64) -> Result<Self> {
        positive("disk radius", radius)?;
        Ok(Self::plain(
            DomainKind::Disk { radius },
            2.0 * PI * radius * BARGMANN_METRIC_SCALE,
        ))
    }

    /// Annulus; `∂A` has two circles and both count.
    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        positive("annulus inner radius", inner)?;
        if !(outer > inner) {
            return Err(ModelError::Domain(format!(
                "annulus needs inner < outer, got {inner} and {outer}"
            )));
        }
        Ok(Self::plain(
            DomainKind::Annulus { inner, outer },
            2.0 * PI * (inner + outer) * BARGMANN_METRIC_SCALE,
        ))
    }

    pub fn shifted_disk(radius: f64, center: Complex64) -> Result<Self> {
        positive("disk radius", radius)?;
        if center.norm() >= radius {
            return Err(ModelError::Domain(format!(
                "shifted disk must contain the origin (|c| = {} >= R = {radius})",
                center.norm()
            )));
        }
        Ok(Self::plain(
            DomainKind::ShiftedDisk { radius, center },
            2.0 * PI * radius * BARGMANN_METRIC_SCALE,
        ))
    }

    pub fn polar_cap(theta0: f64) -> Result<Self> {
        if !(theta0 > 0.0 && theta0 < PI) {
            return Err(ModelError::Domain(format!("cap angle {theta0} must lie in (0, π)")));
        }
        Ok(Self::plain(
            DomainKind::PolarCap { theta0 },
            2.0 * PI * SPHERE_RADIUS * theta0.sin(),
        ))
    }

    /// Star-shaped sphere region; the boundary length is computed from the
    /// curve `φ ↦ (θ_max(φ), φ)` on the sphere of radius [`SPHERE_RADIUS`].
    pub fn star_shaped(boundary: PolarBoundary) -> Result<Self> {
        let n = 4096;
        let h = 2.0 * PI / n as f64;
        let mut length = 0.0;
        for j in 0..n {
            let phi = j as f64 * h;
            let th = boundary.theta_max(phi);
            if !(th > 0.0 && th < PI) {
                return Err(ModelError::Domain(format!(
                    "boundary angle {th} at φ = {phi} must lie in (0, π)"
                )));
            }
            // periodic central difference, spectrally accurate for smooth curves
            let d = (boundary.theta_max(phi + 1e-5) - boundary.theta_max(phi - 1e-5)) / 2e-5;
            length += (d * d + th.sin().powi(2)).sqrt();
        }
        Ok(Self::plain(
            DomainKind::StarShaped { boundary },
            SPHERE_RADIUS * length * h,
        ))
    }

    /// `A^c`; the boundary is shared.
    pub fn complement(mut self) -> Self {
        self.complemented = !self.complemented;
        self
    }

    pub fn supports(&self, geometry: Geometry) -> bool {
        use DomainKind::*;
        match &self.kind {
            Empty | Full => true,
            HalfCylinder => geometry == Geometry::Cylinder,
            Disk { .. } | Annulus { .. } | ShiftedDisk { .. } => geometry == Geometry::BargmannPlane,
            PolarCap { .. } | StarShaped { .. } => geometry == Geometry::Sphere,
        }
    }

    /// Riemannian signed distance to `∂A` for plane domains, negative inside `A`.
    /// A defining function in the sense `{ρ < 0} = int A`.
    pub fn defining_function(&self, z: Complex64) -> Option<f64> {
        let rho = match &self.kind {
            DomainKind::Disk { radius } => z.norm() - radius,
            DomainKind::ShiftedDisk { radius, center } => (z - center).norm() - radius,
            DomainKind::Annulus { inner, outer } => (inner - z.norm()).max(z.norm() - outer),
            _ => return None,
        };
        let rho = rho * BARGMANN_METRIC_SCALE;
        Some(if self.complemented { -rho } else { rho })
    }

    pub fn label(&self) -> String {
        let base = match &self.kind {
            DomainKind::Empty => "empty".to_string(),
            DomainKind::Full => "full".to_string(),
            DomainKind::HalfCylinder => "half_cylinder".to_string(),
            DomainKind::Disk { radius } => format!("disk(R={radius})"),
            DomainKind::Annulus { inner, outer } => format!("annulus(R1={inner};R2={outer})"),
            DomainKind::ShiftedDisk { radius, center } => {
                format!("shifted_disk(R={radius};c={}{:+}i)", center.re, center.im)
            }
            DomainKind::PolarCap { theta0 } => format!("polar_cap(theta0={theta0})"),
            DomainKind::StarShaped { .. } => "star_shaped".to_string(),
        };
        if self.complemented {
            format!("complement[{base}]")
        } else {
            base
        }
    }
}

fn positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ModelError::Domain(format!("{what} must be positive, got {v}")))
    }
}

/// A geometry, a domain and the parameters needed to build `T_{A,k}`.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub geometry: Geometry,
    pub domain: DomainSpec,
    pub k: u32,
    /// Basis cutoff; `None` picks the default for the model.
    pub truncation: Option<usize>,
    /// Tolerances for matrix assembly.
    pub quadrature: QuadratureSpec,
}

impl ModelSpec {
    pub fn new(geometry: Geometry, domain: DomainSpec, k: u32) -> Result<Self> {
        let spec = Self {
            geometry,
            domain,
            k,
            truncation: None,
            quadrature: QuadratureSpec::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_truncation(mut self, cutoff: usize) -> Self {
        self.truncation = Some(cutoff);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(ModelError::Domain("k must be at least 1".into()));
        }
        if !self.domain.supports(self.geometry) {
            return Err(ModelError::Unsupported(format!(
                "domain {} on geometry {}",
                self.domain.label(),
                self.geometry.name()
            )));
        }
        self.quadrature.validate()?;
        Ok(())
    }

    pub fn complex_dim(&self) -> u32 {
        1
    }

    /// Basis size actually used.
    pub fn basis_cutoff(&self) -> usize {
        if let Some(c) = self.truncation {
            return c;
        }
        let k = self.k;
        match (&self.geometry, &self.domain.kind) {
            (Geometry::Cylinder, _) => crate::cylinder_cutoff(k),
            (Geometry::Sphere, _) => k as usize,
            (Geometry::BargmannPlane, kind) => {
                let reach = match kind {
                    DomainKind::Disk { radius } => *radius,
                    DomainKind::Annulus { outer, .. } => *outer,
                    DomainKind::ShiftedDisk { radius, center } => radius + center.norm(),
                    _ => 1.0,
                };
                crate::bargmann_cutoff(k, reach)
            }
        }
    }
}
