use racah::RacahError;
use thiserror::Error;

/// Exit codes: 0 success, 1 check failure, 2 input error, 3 numerical breakdown.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<RacahError> for CliError {
    fn from(e: RacahError) -> Self {
        match e {
            RacahError::NumericalBreakdown { .. }
            | RacahError::Overflow(_)
            | RacahError::DegenerateRow { .. }
            | RacahError::PoleError { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
