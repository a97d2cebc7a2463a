use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("catalecticant index i={i} out of range for degree {d}")]
    IndexOutOfRange { i: usize, d: usize },

    #[error("degree {j} exceeds form degree {d}")]
    DegreeTooLarge { j: usize, d: usize },

    #[error("apolar ideal undefined for 0")]
    ZeroForm,

    #[error("minor size {size} too large for a {rows}x{cols} matrix")]
    MinorTooLarge { size: usize, rows: usize, cols: usize },

    #[error("symbolic minors are only emitted for sizes 1..=4, got {0}")]
    MinorSizeUnsupported(usize),

    #[error("tangent formula applied off its stratum: rank is {actual}, expected {expected}")]
    OffStratum { expected: usize, actual: usize },

    #[error("ambiguous stratum: apolar degree {s} with 2s > d + 1 = {}", d + 1)]
    AmbiguousStratum { s: usize, d: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a member of {0}")]
    NotMember(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("io error: {0}")]
    Io(String),

    /// An internal identity failed; indicates a bug rather than bad input.
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl CatError {
    pub fn is_internal(&self) -> bool {
        matches!(self, CatError::Assertion(_))
    }
}

impl From<std::io::Error> for CatError {
    fn from(e: std::io::Error) -> Self {
        CatError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CatError>;
