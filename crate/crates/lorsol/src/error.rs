//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LorsolError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("metric is degenerate")]
    DegenerateMetric,

    #[error("metric is not Lorentzian: signature ({pos},{neg})")]
    NotLorentzian { pos: usize, neg: usize },

    #[error("operation requires the orthonormal (+,+,-) metric")]
    NotOrthonormal,

    #[error("Lie algebra is not unimodular")]
    NotUnimodular,

    #[error("Jacobi identity fails")]
    JacobiFails,

    #[error("expected family {expected}, got {got}")]
    WrongFamily { expected: String, got: String },

    #[error("operator is not self-adjoint with respect to the metric")]
    NotSelfAdjoint,

    #[error("classification is ambiguous at the given tolerance: {0}")]
    AmbiguousClassification(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
