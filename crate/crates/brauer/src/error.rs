use std::io;

use thiserror::Error;

/// Failures surfaced by the command-line driver, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or arguments rejected by validation.
    #[error("{0}")]
    Input(String),
    /// A mathematical identity failed; the payload describes where.
    #[error("identity failure: {0}")]
    Identity(String),
    /// A configured resource limit was hit.
    #[error("{0}")]
    Cap(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) | CliError::Json(_) => 2,
            CliError::Identity(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

/// Core errors met while reading input are input errors, except size caps.
impl From<brauer_core::Error> for CliError {
    fn from(e: brauer_core::Error) -> Self {
        match e {
            brauer_core::Error::ScaleCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
