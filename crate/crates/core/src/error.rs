use crate::exactalg::Field;

/// Errors raised by the algebra, geometry and bundle routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("undefined input: {0}")]
    UndefinedInput(String),
    #[error("strategy not applicable: {0}")]
    Strategy(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
