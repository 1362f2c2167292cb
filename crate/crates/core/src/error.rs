use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("exterior degree {0} not supported (only 2 and 3)")]
    InvalidExteriorDegree(usize),

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("the zero covector is in the resonance variety by convention; test nonzero covectors")]
    ZeroCovector,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("closed form requires n = 4, got n = {0}")]
    NotDimensionFour(usize),

    #[error("weight is not a simple root of the given root system")]
    NotSimpleRoot,

    #[error("weight must be dominant")]
    NotDominant,

    #[error("weight does not lie in the rational span of the simple roots")]
    NotInRootSpan,

    #[error("zero weight not allowed here")]
    ZeroWeight,

    #[error("invalid summand selection: index {0} out of range for this highest weight")]
    InvalidSummand(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph on {0} vertices exceeds the subset-enumeration cap of {1}")]
    GraphTooLarge(usize, usize),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid subspace data: {0}")]
    InvalidSubspace(String),

    #[error("deficiency bound requires a Vanishes decision")]
    DecisionNotVanishes,

    #[error("preset parameter must be at least {min}, got {got}")]
    PresetParameter { min: usize, got: usize },

    #[error("invalid scan parameters: m = {m} must satisfy 0 <= m <= C({n},2) = {max}")]
    InvalidScanDimension { n: usize, m: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
