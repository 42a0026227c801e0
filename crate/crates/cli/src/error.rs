use thiserror::Error;

/// Exit status of a run.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Capacity(_) => EXIT_CAPACITY,
        }
    }
}

impl From<conrel::Error> for CliError {
    fn from(e: conrel::Error) -> Self {
        match e {
            conrel::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
