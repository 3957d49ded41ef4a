use std::fmt;

use steiner_core::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// A property or cross-check failed (exit 2).
    Verification(String),
    /// File, format or usage problem (exit 3).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Verification(_)) | CliError::Verification(_) => 2,
            CliError::Core(Error::Parse(_)) | CliError::Io(_) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(format!("CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
