use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {q} exceeds the configured cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element index {index} is not in [0, {q})")]
    ElementOutOfRange { index: u64, q: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} columns, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
    #[error("the smaller code is not contained in the larger code")]
    NotNested,
    #[error("t = {t} is outside 1..={max}")]
    InvalidT { t: usize, max: usize },
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("enumeration budget exceeded: {needed} > {budget} ({what})")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },
    #[error("quotient is not integral: {0}")]
    NonIntegralQuotient(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("degenerate pair: k1 = k2 leaves no room for a secret")]
    DegeneratePair,
    #[error("mutual information is not a rational multiple of log q: {0}")]
    IrrationalLeakage(String),
}
