use std::path::Path;

use thiserror::Error;

/// Failures of a CLI invocation, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Reading or writing a file failed; the OS message is kept verbatim.
    #[error("{0}")]
    Io(String),
    /// Bad arguments, malformed documents or invalid parameters.
    #[error("{0}")]
    Validation(String),
    /// Two computations that must agree did not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Inconsistent(_) => 4,
        }
    }
}

impl From<seqspace::Error> for CliError {
    fn from(e: seqspace::Error) -> Self {
        match e {
            seqspace::Error::Inconsistent(msg) => CliError::Inconsistent(msg),
            other => CliError::Validation(other.to_string()),
        }
    }
}
