use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad parameters or input data.
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("truncation failure: {0}")]
    Truncation(squeezelab_core::Error),
    #[error(transparent)]
    Core(squeezelab_core::Error),
    #[error("oracle disagreement: {0}")]
    Oracle(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    /// 2 for validation, 3 for truncation, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Truncation(_) => 3,
            _ => 1,
        }
    }
}

impl From<squeezelab_core::Error> for CliError {
    fn from(e: squeezelab_core::Error) -> Self {
        use squeezelab_core::Error as E;
        match e {
            E::Truncation { .. } => CliError::Truncation(e),
            E::NoBracket { .. } => CliError::Core(e),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
