use thiserror::Error;

use crate::conditions::ConditionReport;

pub type Result<T> = std::result::Result<T, IneqError>;

#[derive(Debug, Clone, Error)]
pub enum IneqError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("field mismatch: cannot combine real and complex operands")]
    FieldMismatch,

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("real vector has a nonzero imaginary part at index {index}")]
    ImaginaryInReal { index: usize },

    #[error("rank deficiency at member {index}: residual norm {residual:e}")]
    RankDeficient { index: usize, residual: f64 },

    #[error("family is not orthonormal within {tol:e}: {detail}")]
    NotOrthonormal { tol: f64, detail: String },

    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),

    #[error("degenerate scalar pair: |hi - lo| = {diff:e}, |hi + lo| = {sum:e}")]
    DegeneratePair { diff: f64, sum: f64 },

    #[error("vector e must have unit norm, got {norm}")]
    NotUnit { norm: f64 },

    #[error("coefficient sequence must be nonzero")]
    ZeroSequence,

    #[error("admissibility condition violated (margin {:e})", .0.margin)]
    ConditionViolated(ConditionReport),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("malformed instance document: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for IneqError {
    fn from(err: std::io::Error) -> Self {
        IneqError::Io(err.to_string())
    }
}
