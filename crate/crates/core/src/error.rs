use thiserror::Error;

/// Errors raised by the exact-arithmetic substrate and the classification code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is singular or rank deficient: {0}")]
    Rank(String),
    #[error("cannot combine sqrt({0}) with sqrt({1})")]
    MixedRadicand(u64, u64),
    #[error("representation is reducible (m = 0)")]
    Reducible,
    #[error("no invariant symplectic form unless b = 1 (got b = {0})")]
    NoSymplecticForm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("origin is not an interior point of the polytope")]
    Polarity,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
