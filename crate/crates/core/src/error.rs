use thiserror::Error;

use crate::numerics::Representation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("representation mismatch: expected {expected}, found {found}")]
    RepresentationMismatch {
        expected: Representation,
        found: Representation,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("amplitude has zero norm")]
    ZeroNorm,

    #[error("amplitude is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("sigma overlap has imaginary part {0:e}")]
    NonRealOverlap(f64),

    #[error("grid with {n} points per axis is too large for the dense form (max {max})")]
    GridTooLarge { n: usize, max: usize },

    #[error("grid under-resolves the mode: {0}")]
    UnderResolved(String),

    #[error("rank truncation error {error:e} exceeds limit {limit:e}")]
    TruncationExceeded { error: f64, limit: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures caused by a physically degenerate configuration
    /// (as opposed to malformed input).
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::Degenerate(_) | Error::ZeroNorm)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
