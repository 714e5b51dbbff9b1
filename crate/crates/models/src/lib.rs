//! Spectra of Toeplitz operators `T_{A,k}` with indicator symbol on
//! explicitly solvable Kähler models: a flat cylinder, the Bargmann plane
//! and the round sphere.
//!
//! Closed forms cover the half cylinder, centred disks, annuli and polar
//! caps; shifted disks and star-shaped sphere regions go through matrix
//! assembly and a dense Hermitian eigensolver.

mod closed;
mod coherent;
mod domain;
mod error;
mod fourier;
mod matrix;
mod sampled;
mod spectrum;

pub use closed::{
    bargmann_annulus_spectrum, bargmann_cutoff, bargmann_disk_spectrum, cap_parameter,
    cylinder_cutoff, cylinder_spectrum, sphere_cap_spectrum, TAIL_TOLERANCE,
};
pub use coherent::coherent_norm_on_domain;
pub use domain::{
    DomainKind, DomainSpec, Geometry, ModelSpec, PolarBoundary, BARGMANN_METRIC_SCALE,
    SPHERE_RADIUS,
};
pub use error::{ModelError, Result};
pub use fourier::{arc_boundary_points, fourier_interval_matrix, CircleArc};
pub use matrix::{hermitian_eigen, hermitian_eigenvalues, toeplitz_matrix, HERMITIAN_TOLERANCE};
pub use sampled::{sphere_sampled_basis, SampledBasis};
pub use spectrum::{Spectrum, SpectrumInfo, TailBound, TailSide, CLAMP_TOLERANCE};

/// Spectrum of `T_{A,k}` for a model, by closed form where one exists and
/// by matrix assembly otherwise.
pub fn spectrum(model: &ModelSpec) -> Result<Spectrum> {
    model.validate()?;
    let k = model.k;
    let cutoff = model.basis_cutoff();
    let dom = &model.domain;
    let closed = match (&model.geometry, &dom.kind) {
        (Geometry::Cylinder, DomainKind::HalfCylinder) => Some(cylinder_spectrum(k, cutoff)?),
        (Geometry::BargmannPlane, DomainKind::Disk { radius }) => {
            Some(bargmann_disk_spectrum(k, *radius, cutoff)?)
        }
        (Geometry::BargmannPlane, DomainKind::Annulus { inner, outer }) => {
            Some(bargmann_annulus_spectrum(k, *inner, *outer, cutoff)?)
        }
        (Geometry::Sphere, DomainKind::PolarCap { theta0 }) => Some(sphere_cap_spectrum(k, *theta0)?),
        (geom, DomainKind::Empty | DomainKind::Full) => {
            let size = match geom {
                Geometry::Sphere => k as usize + 1,
                Geometry::Cylinder => 2 * cutoff + 1,
                Geometry::BargmannPlane => cutoff + 1,
            };
            return closed::degenerate_spectrum(geom.name(), k, dom.clone(), size);
        }
        _ => None,
    };
    if let Some(s) = closed {
        return Ok(if dom.complemented { s.complement() } else { s });
    }
    matrix_spectrum(model)
}

/// Spectrum by assembling the Toeplitz matrix and diagonalizing it.
pub fn matrix_spectrum(model: &ModelSpec) -> Result<Spectrum> {
    let g = toeplitz_matrix(model)?;
    let values = hermitian_eigenvalues(&g)?;
    let mut tail = Vec::new();
    if model.geometry == Geometry::BargmannPlane {
        let reach = match &model.domain.kind {
            DomainKind::Disk { radius } => *radius,
            DomainKind::ShiftedDisk { radius, center } => radius + center.norm(),
            _ => 0.0,
        };
        if reach > 0.0 {
            // the domain sits inside the centred disk of radius `reach`
            let x = model.k as f64 * reach * reach;
            let n = model.basis_cutoff();
            let first = toeplab_specfun::reg_inc_gamma(n as f64 + 2.0, x)?;
            tail.push(TailBound {
                side: if model.domain.complemented { TailSide::NearOne } else { TailSide::NearZero },
                first,
                ratio: (x / (n as f64 + 3.0)).min(1.0),
            });
        }
    }
    Spectrum::from_values(
        values,
        SpectrumInfo {
            model: model.geometry.name().into(),
            k: model.k,
            complex_dim: model.complex_dim(),
            domain: model.domain.clone(),
            exact: false,
            tail,
        },
    )
}
