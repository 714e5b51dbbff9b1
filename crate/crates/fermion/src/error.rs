use thiserror::Error;
use toeplab_models::ModelError;
use toeplab_spectral::SpectralError;
use toeplab_specfun::SpecfunError;

#[derive(Debug, Error)]
pub enum FermionError {
    #[error("parameter {value} at index {index} lies outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("{what} needs at most {limit} parameters, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },
    #[error("cumulant order {order} exceeds the PMF route's limit of {limit}; use the spectral route")]
    Precision { order: usize, limit: usize },
    #[error("frame is not orthonormal (deviation {deviation:e})")]
    FrameNotOrthonormal { deviation: f64 },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub type Result<T> = std::result::Result<T, FermionError>;
