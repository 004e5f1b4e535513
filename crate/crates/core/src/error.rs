use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit series: constant term is zero")]
    NonUnitSeries,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}x{0} vs {1}x{1}")]
    ShapeMismatch(usize, usize),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("evaluation point has repeated coordinates")]
    RepeatedCoordinates,
}

pub type Result<T> = std::result::Result<T, Error>;
