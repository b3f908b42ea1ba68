use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("mixed field tags: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relations are not nilpotent within bound {0}: a path of that length survives reduction")]
    NotNilpotent(usize),
    #[error("field too small for radical computation (need p > {0})")]
    FieldTooSmall(usize),
    #[error("non-split semisimple quotient: {0}")]
    NonSplit(String),
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    Io(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Process exit code for the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidField(_) | Error::Io(_) => 1,
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
