//! Crate-wide error type.

/// Errors raised by construction, conversion, and decomposition routines.
///
/// Verifier functions never return `Err` for property violations; they report
/// through [`crate::mat::VerifyReport`] instead. `Err` here means the request
/// itself was malformed or an input failed a hard precondition.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("division by zero in GF({order})")]
    DivisionByZero { order: u64 },
    #[error("quadratic character needs odd field order, got {0}")]
    EvenCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{value} is not congruent to {expected} mod 4")]
    BadResidueClass { value: u64, expected: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("invalid orthogonal array: {0}")]
    InvalidOA(String),
    #[error("invalid core: {0}")]
    InvalidCore(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not balancedly multi-splittable: {0}")]
    NotMultiSplittable(String),
    #[error("row clustering violation: {0}")]
    ClassSizeViolation(String),
    #[error("regularity failure: {0}")]
    RegularityFailure(String),
    #[error("embedding failure: {0}")]
    EmbeddingFailure(String),
    #[error("matrix is not row/column regular: {0}")]
    NotRegular(String),
    #[error("bad design parameters: {0}")]
    BadParameters(String),
    #[error("bad selection size: expected {expected}, got {got}")]
    BadSelectionSize { expected: usize, got: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{path}:{line}:{column}: {message}")]
    ParseError {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("artifact kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: String, got: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
