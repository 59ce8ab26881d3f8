use thiserror::Error;

/// Errors surfaced by the library. Parse errors carry a byte offset into the
/// source expression so the CLI can point at the offending token.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("input must be homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("log-radii lie outside the polyhedral domain")]
    OutsideDomain,
    #[error("invalid polyhedral domain: {0}")]
    InvalidDomain(String),
    #[error("cap must be positive, got {0}")]
    InvalidCap(String),
    #[error("linear program has an unbounded objective")]
    LpUnbounded,
    #[error("internal LP failure: {0}")]
    LpInternal(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid problem file: {0}")]
    Problem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
