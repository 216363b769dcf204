use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed cache: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("insufficient range: the census needs cubic fields with |disc_K| < {required}, available |disc_K| < {available}")]
    InsufficientRange { required: u64, available: u64 },
    #[error(transparent)]
    Core(sextic_core::Error),
}

impl From<sextic_core::Error> for CliError {
    fn from(e: sextic_core::Error) -> Self {
        match e {
            sextic_core::Error::InsufficientRange { required, available } => {
                CliError::InsufficientRange { required, available }
            }
            sextic_core::Error::SexticMismatch { .. } | sextic_core::Error::RamificationCase { .. } => {
                CliError::Verify(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::Cache { .. } => 3,
            CliError::Verify(_) => 4,
            CliError::InsufficientRange { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
