use thiserror::Error;

/// Errors raised by the engine. Each variant maps onto one CLI exit code
/// (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Input(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("face {0} has dimension 0 and no half-boundary")]
    UndefinedBoundary(String),

    #[error("cannot compose at level {level}: target {target} differs from source {source_}")]
    Composition { level: usize, target: String, source_: String },

    #[error("directed cycle in the 1-skeleton through {0}")]
    CyclicSkeleton(String),

    #[error("element count exceeded the cap of {cap}")]
    Explosion { cap: usize },

    #[error("dimension bound exceeded: {requested} > {bound}")]
    DimensionBound { requested: usize, bound: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("category is contracting: {0}")]
    Contracting(String),

    #[error("ambiguous loop space: {0}")]
    Ambiguous(String),

    #[error("shell violation: {0}")]
    Shell(String),

    #[error("grading mismatch: {0}")]
    Grading(String),

    #[error("degree {requested} is outside the valid range (truncation {truncation}, valid up to {valid})")]
    Truncation { requested: i64, truncation: usize, valid: i64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// 1 = violation, 2 = input error, 3 = resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Explosion { .. } | Error::DimensionBound { .. } => 3,
            Error::Invariant(_) | Error::Grading(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
