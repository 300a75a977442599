//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChainletError {
    #[error("grade mismatch: expected {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },

    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {n} exceeds the configured cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("simplicity test not supported for grade {grade} (only 0, 1, 2, n-1, n)")]
    UnsupportedGrade { grade: usize },

    #[error("form supports derivatives up to order {available}, but order {needed} is required")]
    InsufficientOrder { available: usize, needed: usize },

    #[error("translation set is empty but r = {r} >= 1")]
    EmptyTranslations { r: usize },

    #[error("certificate does not reassemble the chain: residual {residual:e} against `{form}`")]
    CertMismatch { residual: f64, form: String },

    #[error("term of order {order} is invisible to the level-{r} norm")]
    OrderAboveLevel { order: usize, r: usize },

    #[error("spanning set is degenerate (wedge is zero)")]
    DegenerateSpan,

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("flow integration failed: {0}")]
    FlowFailure(String),

    #[error("jacobian inconsistent with forward map: {0}")]
    JacobianMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, ChainletError>;
