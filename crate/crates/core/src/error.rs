use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A division that must be exact left a remainder. Always a bug in a
    /// formula transcription, never a valid runtime state.
    #[error("non-exact polynomial division: {0}")]
    NonExactDivision(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("requested irreducible #{requested} but only {available} exist")]
    IndexOutOfRange { requested: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("operator is singular")]
    SingularOperator,
    #[error("missing base case for irreducible key {0}")]
    MissingBaseCase(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
