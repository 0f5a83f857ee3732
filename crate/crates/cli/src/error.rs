use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] rieszlab::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("unknown suite `{name}` (expected one of: {known})")]
    UnknownSuite { name: String, known: String },
    #[error("input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Short machine-readable kind for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "core",
            CliError::Usage(_) => "usage",
            CliError::UnknownSuite { .. } => "unknown-suite",
            CliError::Input(_) => "input",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }
}
