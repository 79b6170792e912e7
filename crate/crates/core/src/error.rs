use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the engine.
///
/// Everything except [`Error::Invariant`] is a rejected input; `Invariant`
/// means an internal consistency check failed and is always a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("prime {0} exceeds the supported range (must fit in 64 bits)")]
    PrimeTooLarge(BigInt),
    #[error("m not squarefree: {0}")]
    NotSquarefree(BigInt),
    #[error("|m| must be at least 2, got {0}")]
    MTooSmall(BigInt),
    #[error("r must be at least 1")]
    ZeroExponent,
    #[error("degree p^r = {0} exceeds the supported bound {1}")]
    DegreeTooLarge(String, u64),
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("coefficient not divisible by {0}^{1}")]
    NotDivisible(u64, u64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for rejected inputs, false for internal failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
