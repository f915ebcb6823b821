use thiserror::Error;

use crate::config::Location;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config error ({location}): {message}")]
    Config { location: Location, message: String },

    #[error(transparent)]
    Core(#[from] imethod_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// The run finished and wrote its artifacts, but a checked property failed.
    #[error("diagnostic failure: {0}")]
    Diagnostic(String),
}

impl LabError {
    /// 2 for configuration problems, 3 for numeric or diagnostic failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config { .. } => 2,
            _ => 3,
        }
    }
}
