use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced to the shell, each with a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] epsident::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use epsident::Error as E;
        match self {
            CliError::Input(_) | CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Core(E::Incompatible(_) | E::Infeasible) => 3,
            CliError::Core(E::NoFeasibleC { .. }) => 4,
            CliError::Core(_) => 2,
            CliError::Verification(_) => 5,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
