use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns one of these;
/// none of them are recoverable by retrying with the same inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("field with q = {q} exceeds the table ceiling {ceiling}")]
    FieldTooLarge { q: u64, ceiling: u64 },
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("{arg} does not divide {modulus}")]
    NotADivisor { arg: u64, modulus: u64 },
    #[error("discrete log of zero")]
    LogOfZero,
    #[error("expected a sequence of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands belong to different cyclotomic rings")]
    FieldMismatch,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("value is not divisible by two in Z[zeta_p]")]
    NotDivisibleByTwo,
    #[error("exact division failed")]
    NotExactlyDivisible,
    #[error("cyclotomic integer does not lie in the quadratic subring")]
    NotQuadratic,
    #[error("invalid defining-set mode: {0}")]
    InvalidDMode(String),
    #[error("rank {r} out of range 1..={max}")]
    RankOutOfRange { r: u32, max: u32 },
    #[error("requested computation needs {work} work units, ceiling is {ceiling}")]
    TooLarge { work: u64, ceiling: u64 },
    #[error("subspace point count N(H_r) is not a nonnegative integer")]
    NonIntegerN,
    #[error("inconsistent parameters: {0}")]
    InconsistentParams(String),
    #[error("a must be nonzero")]
    ZeroA,
    #[error("bound violated: {0}")]
    BoundViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
