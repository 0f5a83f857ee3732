use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the configured cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("invalid interval [{lower}, {upper}] for coordinate {index}")]
    InvalidInterval {
        index: usize,
        lower: String,
        upper: String,
    },

    #[error("point lies outside the domain box (coordinate {index})")]
    OutsideBox { index: usize },

    #[error("generator index {index} out of range for dimension {dim}")]
    GeneratorIndex { index: usize, dim: usize },

    #[error("region is empty")]
    EmptyRegion,

    #[error("no multiplier up to {ceiling} establishes dominance")]
    DoublingCeiling { ceiling: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid rational literal {0:?}")]
    RationalLiteral(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
