use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<sideband_core::Error> for CliError {
    fn from(e: sideband_core::Error) -> Self {
        use sideband_core::Error as E;
        match e {
            E::Domain(m) => CliError::Domain(m),
            E::Validation(m) => CliError::Config(m),
            E::Consistency(m) | E::Oracle(m) => CliError::Validation(m),
        }
    }
}
