use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be a positive integer")]
    ZeroConductor,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("inverse of zero field element")]
    ZeroInverse,

    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u64, u64),

    #[error("zero coordinate vector cannot define a projective object")]
    ZeroVector,

    #[error("points are projectively dependent")]
    DependentPoints,

    #[error("lines are identical")]
    IdenticalLines,

    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),

    #[error("plane belongs to Q_n and cannot be sectioned")]
    PlaneInArrangement,

    #[error("multinet is not a net: {0}")]
    NotANet(String),

    #[error("invalid multinet: {0}")]
    InvalidMultinet(String),

    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),
}
