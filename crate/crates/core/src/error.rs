use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished at the requested evaluation point.
    #[error("pole: {0}")]
    Pole(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structural input constraint violated (lengths, particle counts, capacities).
    #[error("invalid input: {0}")]
    Invariant(String),

    /// The linear system built from the sample points has deficient rank.
    #[error("singular system: {0}")]
    Singular(String),

    /// An overdetermined system had no exact solution.
    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
