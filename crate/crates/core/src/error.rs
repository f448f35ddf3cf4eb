use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings ({0})")]
    RingMismatch(String),
    #[error("conductor {conductor} is not divisible by {needed}")]
    ConductorTooSmall { needed: u64, conductor: u64 },
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },
    #[error("element is not a unit")]
    NotUnit,
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("determinant of an empty matrix has no ring to live in")]
    EmptyMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("{value} is not idempotent modulo {modulus}")]
    NotIdempotent { value: u64, modulus: u64 },
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("level {requested} exceeds the level {available} of the function")]
    LevelTooSmall { requested: u32, available: u32 },
    #[error("{value} is divisible by {prime}")]
    DivisibleByPrime { value: i64, prime: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("splitting check failed: {0}")]
    SplittingFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
