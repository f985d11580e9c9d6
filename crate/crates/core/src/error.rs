use thiserror::Error;

/// Errors raised by the geometry, channel, codebook and estimation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("projection direction has zero norm")]
    ZeroDirection,

    #[error("vector must be non-empty with finite components")]
    InvalidVector,

    #[error("no non-degenerate direction left in the complement subspace (ambient dim {ambient}, forbidden {forbidden})")]
    DegenerateSubspace { ambient: usize, forbidden: usize },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("power constraint violated: sum of squared radii {energy} > nP = {budget}; smallest admissible block length is {min_n}")]
    PowerViolation { energy: f64, budget: f64, min_n: u64 },

    #[error("error exponent E = {exponent} exceeds E0 = 9P/sigma^2 = {e0}")]
    ExponentTooLarge { exponent: f64, e0: f64 },

    #[error("unknown codeword path {0:?}")]
    UnknownPath(Vec<usize>),

    #[error("word {0} not found in codebook")]
    WordNotFound(usize),

    #[error("tested and sent words must differ (both are word {0})")]
    SameWord(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
