use thiserror::Error;

/// Errors produced by the analysis modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("unsupported polynomial degree {degree} (at most {max} is supported)")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("unsupported torus dimension {0}")]
    UnsupportedDimension(usize),

    #[error("not a local homeomorphism: det A = 0")]
    NotLocalHomeomorphism,

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid lift: {0}")]
    InvalidLift(String),

    #[error("rasterization budget exceeded at step {step}")]
    RasterBudget { step: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
