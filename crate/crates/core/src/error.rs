use alloc::string::String;

/// Errors raised by the path calculus.
///
/// A Littelmann operator leaving its module is not an error: it is
/// reported as `None`.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported type label `{0}`")]
    UnsupportedType(String),
    #[error("word {0} is not reduced")]
    NonReducedWord(String),
    #[error("generator index {index} out of range for rank {rank}")]
    BadGenerator { index: usize, rank: usize },
    #[error("time {0} outside the path horizon")]
    TimeOutOfRange(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("paths have different horizons")]
    HorizonMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parameter {0} out of the admissible range")]
    OutOfRange(String),
    #[error("path is not dominant")]
    NotDominant,
    #[error("path is not {0}-dominant")]
    NotAlphaDominant(usize),
    #[error("path or weight is not integral")]
    NotIntegral,
    #[error("operation needs exact crystallographic data")]
    NotCrystallographic,
    #[error("closed formula hypothesis violated: {0}")]
    FormulaHypothesis(String),
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("non-positive principal minor at t = {0}")]
    NonPositiveMinor(f64),
    #[error("empty time grid")]
    EmptyGrid,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
