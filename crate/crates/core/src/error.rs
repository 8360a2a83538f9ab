use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed rings: {0} and {1}")]
    MixedRings(String, String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a partial frame")]
    NotPartialFrame,
    #[error("a norm bound is required for the infinite ring {0}")]
    MissingBound(String),
    #[error("simplex {0:?} is not in the complex")]
    NotInComplex(Vec<usize>),
    #[error("map is not monotone: {0} < {1} but f({0}) is not <= f({1})")]
    NonMonotone(usize, usize),
    #[error("group action escapes the truncated vertex set at vertex {vertex} ({label})")]
    EscapesTruncation { vertex: usize, label: String },
    #[error("join condition violated: {0}")]
    JoinCondition(String),
    #[error("size guard tripped: {what} = {size} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("matrix is not invertible over the ring")]
    NotInvertible,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
