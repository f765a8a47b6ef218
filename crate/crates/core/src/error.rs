//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed expression text. `offset` is a byte offset into the input.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// An expression or sum term left the real domain.
    #[error("domain error in `{expr}`: {reason}")]
    Domain { expr: String, reason: String },

    #[error("unknown catalog integrand `{0}`")]
    UnknownName(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("deletion index {index} outside 1..={n}")]
    Index { index: usize, n: usize },

    #[error("adaptive quadrature did not converge: estimate {value}, error estimate {error_estimate:e} above tolerance {tol:e}")]
    NoConvergence {
        value: f64,
        error_estimate: f64,
        tol: f64,
    },

    #[error("integrand is not positive at x = {x} (sampled value {value})")]
    NotPositive { x: f64, value: f64 },

    #[error("too few usable points for an order fit ({usable} usable, need 2)")]
    TooFewPoints { usable: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Failure while evaluating one member of a schedule.
    #[error("at n = {n}: {source}")]
    AtN {
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips any `AtN` context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtN { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn domain(expr: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            expr: expr.into(),
            reason: reason.into(),
        }
    }
}
