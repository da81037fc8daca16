//! Errors carrying the exit-code contract: 2 parse, 3 precondition or
//! validation, 4 input semantics, 5 inconclusive. Internal faults exit 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Semantics(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Semantics(_) => 4,
            CliError::Inconclusive(_) => 5,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<tangles::Error> for CliError {
    fn from(e: tangles::Error) -> CliError {
        match e {
            tangles::Error::DuplicateOrientations(_, _) => CliError::Semantics(e.to_string()),
            tangles::Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
