use thiserror::Error;

/// Errors raised by the arithmetic, group and counting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("prime {p} outside supported range [{min}, {max}]")]
    PrimeOutOfRange { p: u64, min: u64, max: u64 },
    #[error("not invertible")]
    NotInvertible,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("not in GL(2): matrix is singular")]
    NotInGl2,
    #[error("argument must be positive")]
    ZeroArgument,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("malformed matrix literal: {0}")]
    MatrixLiteral(String),
    #[error("interval has {0} points; use the plancherel method")]
    CardinalityOverflow(u128),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("theta generates a proper subfield")]
    ThetaInSubfield,
    #[error("x = {x} is outside the regime x < p = {p}")]
    OutsideRegime { x: u64, p: u64 },
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: i64, hi: i64 },
    #[error("model/subgroup mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
