use thiserror::Error;

/// Errors raised while parsing a word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("generator index {index} out of range 1..={d} at offset {offset}")]
    OutOfRange { index: u64, d: usize, offset: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::OutOfRange { offset, .. } | ParseError::Syntax { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("axis {axis} out of range 1..={d}")]
    AxisOutOfRange { axis: usize, d: usize },
    #[error("a placket needs two distinct axes, got axis {0} twice")]
    DegeneratePlacket(usize),
    #[error("flow is not a cycle (nonzero divergence)")]
    NotACycle,
    #[error("flow boundary does not match the endpoint")]
    BoundaryMismatch,
    #[error("lamp modulus 1 is not allowed (use 0 for Z or m >= 2 for Z_m)")]
    InvalidModulus,
    #[error("the simple random walk is recurrent in dimension {0}; its Green function diverges")]
    Recurrent(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
