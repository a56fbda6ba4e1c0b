use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("state is not normalized (norm {norm:.15})")]
    NotNormalized { norm: f64 },

    #[error("{what} = {value} is outside the domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("no solution for {what} = {value}; attainable range is [{min:.6}, {max:.6}]")]
    Unsolvable {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("{0} failed to converge")]
    NoConvergence(&'static str),

    #[error("estimate undefined: {0}")]
    Undefined(String),

    #[error("numerical check failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_domain(what: &'static str, value: f64, domain: impl Into<String>) -> Error {
    Error::OutOfDomain {
        what,
        value,
        domain: domain.into(),
    }
}
