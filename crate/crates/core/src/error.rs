use thiserror::Error;

/// Errors raised while building or evaluating mixed monotonic programs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MmpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("box corner order violated in dimension {index}: lower {lower} > upper {upper}")]
    CornerOrderViolation { index: usize, lower: f64, upper: f64 },

    #[error("non-finite box entry at index {index}")]
    NonFiniteEntry { index: usize },

    #[error("zero-dimensional box")]
    EmptyBox,

    #[error("cannot bisect a box of zero diameter")]
    ZeroDiameterBox,

    #[error("combinator needs at least one part")]
    EmptyList,

    #[error("weight {index} is negative ({weight})")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("scalar map `{map}` is undefined at {value}")]
    DomainError { map: String, value: f64 },

    #[error("scalar map `{map}` violates its declared direction between {a} and {b}")]
    DirectionViolation { map: String, a: f64, b: f64 },

    #[error("scalar map `{map}` cannot be composed here: wrong monotonicity direction")]
    WrongDirection { map: String },

    #[error("product factor evaluated to {value} < 0")]
    NegativityDetected { value: f64 },

    #[error("ratio denominator evaluated to {value} <= 0")]
    NonpositiveDenominator { value: f64 },

    #[error("evaluation produced NaN")]
    NanEvaluation,

    #[error("constraints do not share a monotone split")]
    MissingMonotoneSplit,

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("inner solve failed: {0}")]
    InnerSolveFailed(String),
}

pub type Result<T, E = MmpError> = std::result::Result<T, E>;
