use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "quadrature did not converge (value {value:e}, error estimate {abs_error_est:e}, {evaluations} evaluations)"
    )]
    NonConvergence {
        value: f64,
        abs_error_est: f64,
        evaluations: usize,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("tabulated kernel evaluated at t = {t} outside its node range [{lo}, {hi}]")]
    Extrapolation { t: f64, lo: f64, hi: f64 },

    #[error("outside the admissible regime: {0}")]
    Regime(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain { what, value, domain }
}
