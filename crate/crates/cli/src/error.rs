use dimer_core::analytic::AnalyticError;
use dimer_core::numeric::NumericError;
use dimer_core::ModelError;
use thiserror::Error;

/// Process exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Validation failed, or the dynamics could not be evaluated.
pub const EXIT_VALIDATION: i32 = 1;
/// Bad flags, config file or parameters, or unwritable output.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid parameters: {0}")]
    Model(#[from] ModelError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Model(_) | CliError::Io { .. } => EXIT_CONFIG,
            CliError::Numeric(NumericError::Model(_)) => EXIT_CONFIG,
            CliError::Validation(_) | CliError::Analytic(_) | CliError::Numeric(_) => EXIT_VALIDATION,
        }
    }
}

pub fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
