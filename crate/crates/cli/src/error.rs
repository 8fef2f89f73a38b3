use std::io;

use posmap_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {0}: {1}")]
    Input(String, #[source] io::Error),
    #[error("cannot write {0}: {1}")]
    Output(String, #[source] io::Error),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// Process exit code: 2 for usage and input errors, 3 for states that fail
    /// validation, 4 for numeric failure, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(..) => 2,
            CliError::InvalidState(_) => 3,
            CliError::Output(..) => 1,
            CliError::Core(Error::NoConvergence { .. }) => 4,
            CliError::Core(Error::InvalidState(_)) => 3,
            CliError::Core(_) => 2,
        }
    }
}
