use thiserror::Error;
use toeplab_specfun::SpecfunError;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("statistical error {relative:e} (relative) above the requested {requested:e}")]
    Statistical { relative: f64, requested: f64 },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, KernelError>;
