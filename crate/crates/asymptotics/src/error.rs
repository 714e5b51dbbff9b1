use thiserror::Error;
use toeplab_specfun::SpecfunError;

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what}: estimates {first:e} and {second:e} disagree beyond rel. {tolerance:e}")]
    NonConvergence {
        what: String,
        first: f64,
        second: f64,
        tolerance: f64,
    },
    #[error("Taylor data of {what} known to degree {got}, need {needed}")]
    InsufficientDegree { what: &'static str, needed: u32, got: u32 },
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
    #[error("route A = {route_a:e} and route B = {route_b:e} ± {error:e} disagree for C_{{{p},{n}}}")]
    RouteDisagreement {
        p: u32,
        n: u32,
        route_a: f64,
        route_b: f64,
        error: f64,
    },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, AsymptoticsError>;
