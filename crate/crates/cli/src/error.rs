use thiserror::Error;
use zetacorr::Error as CoreError;

/// Failures that stop a command before it can report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Precondition(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    /// Malformed inputs are config errors; inputs that are well formed but
    /// violate a mathematical precondition are precondition errors.
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotPrime(_)
            | CoreError::PrimeTooLarge(_)
            | CoreError::InvalidDegree(_)
            | CoreError::TowerMismatch { .. }
            | CoreError::ModulusMismatch
            | CoreError::InvalidDivisor(_)
            | CoreError::InvalidModule(_)
            | CoreError::NotInvertible(_)
            | CoreError::DimensionMismatch(_) => CliError::Config(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
