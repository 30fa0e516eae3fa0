use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index lies outside `0..=max`.
    #[error("index {index} out of range 0..={max}")]
    Index { index: i64, max: i64 },

    /// Adaptive quadrature exhausted its evaluation budget or hit the
    /// round-off floor before meeting the requested tolerance.
    #[error(
        "quadrature did not converge: value {value:e}, error estimate {error_estimate:e} \
         after {evaluations} evaluations"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// A closed form lost too many digits to be trusted.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
