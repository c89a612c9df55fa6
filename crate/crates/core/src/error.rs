use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quotient ring is infinite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("operation `{0}` is not available in this ring mode")]
    WrongMode(String),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("dimension unknown: {0}")]
    DimensionUnknown(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
