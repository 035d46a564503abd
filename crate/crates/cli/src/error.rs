use std::fmt::Display;
use std::path::Path;

use thiserror::Error;

/// Every error maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
    #[error(transparent)]
    Core(#[from] uur_core::Error),
}

impl CliError {
    pub fn input(path: &Path, e: impl Display) -> Self {
        CliError::Input {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn output(path: &Path, e: impl Display) -> Self {
        CliError::Output {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}
