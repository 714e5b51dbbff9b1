use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("{function}: argument out of domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("{what} did not converge within {budget} refinements (estimate {estimate:e}, error {error:e})")]
    NonConvergence {
        what: &'static str,
        budget: usize,
        estimate: f64,
        error: f64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadrature routes disagree: adaptive {first:e} vs density {second:e} (allowed {allowed:e})")]
    RouteDisagreement { first: f64, second: f64, allowed: f64 },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> SpecfunError {
    SpecfunError::Domain {
        function,
        detail: detail.into(),
    }
}
