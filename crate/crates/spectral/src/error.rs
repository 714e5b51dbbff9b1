use thiserror::Error;
use toeplab_models::ModelError;
use toeplab_specfun::SpecfunError;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("interval endpoints out of order: a = {a}, b = {b}")]
    Ordering { a: f64, b: f64 },
    #[error("trace diverges: {0}")]
    Divergent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
