use thiserror::Error;
use toeplab_specfun::SpecfunError;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("basis cutoff {cutoff} too small: {reason}")]
    CutoffTooSmall { cutoff: usize, reason: String },
    #[error("eigenvalue {value} lies outside [0,1] beyond the clamping tolerance")]
    OutOfRange { value: f64 },
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("matrix assembly did not converge: {0}")]
    Assembly(String),
    #[error("arcs overlap: {0}")]
    OverlappingArcs(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, ModelError>;
