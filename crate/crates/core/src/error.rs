use thiserror::Error;

/// Errors raised by every operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is reducible or has the wrong degree")]
    ReducibleModulus(Vec<u16>),
    #[error("field order {0} exceeds 65536")]
    FieldTooLarge(u64),
    #[error("no built-in modulus for order {0}; supply one explicitly")]
    MissingModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of a field of order {q}")]
    InvalidElement { value: u64, q: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("family is empty or contains only the zero vector")]
    EmptyFamily,
    #[error("{what} needs {needed}, budget is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("vector is not in the span of the family")]
    NotInSpan,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("code has minimum distance {0}, need at least 3")]
    DistanceTooSmall(u32),
    #[error("map is not an isometry between the families")]
    NotIsometry,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("hypothesis failed: parent distance {parent_distance} < max weight {max_weight}")]
    HypothesisFailed { parent_distance: u32, max_weight: u32 },
    #[error("code does not contain the parent code")]
    NotSupercode,
    #[error("triangle inequality violated by {0:?}")]
    TriangleViolated(Vec<u32>),
    #[error("invalid weight table: {0}")]
    InvalidWeights(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
