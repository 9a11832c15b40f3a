use thiserror::Error;

use crate::io::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different coefficient fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("operands use different variable orders")]
    OrderMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is out of range (must be a prime below 2^31)")]
    ModulusOutOfRange(u64),

    #[error("invalid variable order: {0}")]
    InvalidVarOrder(String),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),

    #[error("not a triangular set: member {index} {reason}")]
    NotTriangular { index: usize, reason: String },

    #[error("input contains no nonzero polynomial")]
    NoNonzeroPolynomial,

    #[error("{0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: {points} points (limit {limit})")]
    BudgetExceeded { points: u128, limit: u128 },

    /// A safety ceiling on a provably terminating loop was hit. Always a bug.
    #[error("internal ceiling exceeded: {0}")]
    CeilingExceeded(String),

    /// An invariant guaranteed by the theory failed to hold. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
