use thiserror::Error;

use crate::slp::VarId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("character {0:?} is not in the scoring alphabet")]
    UnknownCharacter(char),

    #[error("invalid scoring function: {}", .0.join("; "))]
    InvalidScoring(Vec<String>),

    #[error("invalid SLP: {0}")]
    InvalidSlp(String),

    #[error("variable {0} out of range")]
    VarOutOfRange(VarId),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("substring mismatch: {0}")]
    SubstringMismatch(String),

    /// A broken internal invariant. Indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
