use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("inner product is not symmetric positive definite: {0}")]
    InvalidForm(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not skew-symmetric (residual {residual:.3e})")]
    NotSkew { residual: f64 },

    #[error("element does not lie in the algebra (residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("span is not closed under the bracket (residual {residual:.3e})")]
    ClosureFailure { residual: f64 },

    #[error("element is not in the group (residual {residual:.3e})")]
    NotInGroup { residual: f64 },

    #[error("operands belong to different parent algebras")]
    ParentMismatch,

    #[error("internal consistency check failed: {what} (residual {residual:.3e})")]
    InternalConsistency { what: String, residual: f64 },

    #[error(
        "point is not principal: orbit dimension {found} < sampled maximum {max}; \
         increase the number of samples"
    )]
    NonPrincipalPoint { found: usize, max: usize },

    #[error("hypothesis violated: expected {expected}, found {found}")]
    HypothesisViolation { expected: String, found: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
