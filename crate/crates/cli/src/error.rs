use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input files.
    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] coarse_menger::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// 1 for malformed configuration, 3 for capacity, 2 for anything the
    /// library reports as a broken invariant or precondition.
    pub fn exit_code(&self) -> i32 {
        use coarse_menger::Error as E;
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Core(E::InvalidInput(_) | E::UnknownVertex(_) | E::EmptySet(_) | E::Parse { .. }) => 1,
            CliError::Core(E::Capacity { .. }) => 3,
            CliError::Core(_) => 2,
        }
    }
}
