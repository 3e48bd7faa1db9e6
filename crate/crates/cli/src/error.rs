use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] artinian::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("refusing to append to corrupt store {path} (line {line}): {reason}")]
    CorruptStore { path: PathBuf, line: usize, reason: String },
    #[error("assertion failed at {at}: expected {expected}, got {actual}")]
    Mismatch {
        at: String,
        expected: String,
        actual: String,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.into(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Engine(_) | CliError::Io { .. } | CliError::CorruptStore { .. } => 2,
            CliError::Mismatch { .. } => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
