use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensors or vectors whose shapes do not fit together.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    /// One or more Hopf/Haar axioms failed; the string lists them with residuals.
    #[error("axiom validation failed: {0}")]
    Validation(String),

    #[error("Haar state not faithful (smallest Gram eigenvalue {0:e})")]
    NotFaithful(f64),

    #[error("right-invariance defect in multiplicative unitary: {0}")]
    RightInvarianceDefect(String),

    #[error("functionals belong to different quantum groups")]
    ParentMismatch,

    #[error("not a state: {0}")]
    NotState(String),

    #[error("not idempotent: residual {0:e}")]
    NotIdempotent(f64),

    #[error("null space is not an ideal (residual {0:e})")]
    NotIdeal(f64),

    #[error("subalgebra is not right invariant and expected: {0}")]
    NotExpected(String),

    /// An identity that must hold exactly failed numerically.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("Haar criteria disagree: {0}")]
    EquivalenceViolation(String),

    #[error("partial order violation: {0}")]
    Order(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
