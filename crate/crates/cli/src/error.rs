//! CLI-side error type: wraps the engine errors and adds file-level
//! context for loaders and the pipeline steps.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] cva_core::Error),

    #[error("missing input file {path}")]
    MissingFile { path: PathBuf },

    #[error("{file}:{row}: {detail}")]
    SchemaViolation {
        file: String,
        row: usize,
        detail: String,
    },

    #[error("{file}:{row}: tenor {tenor} is not strictly increasing")]
    NonMonotoneTenor { file: String, row: usize, tenor: f64 },

    #[error("{file}:{row}: quote {value} must be positive")]
    NonPositiveQuote { file: String, row: usize, value: f64 },

    #[error("{file}:{row}: date {date:?} is not strictly increasing")]
    NonMonotoneDate {
        file: String,
        row: usize,
        date: String,
    },

    #[error("Step {step} ({name}): missing input: {what}")]
    MissingInput {
        step: u8,
        name: &'static str,
        what: String,
    },

    #[error("config {file}:{line}: {detail}")]
    Config {
        file: String,
        line: usize,
        detail: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Stable category token for the single-line error protocol.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::MissingFile { .. } => "MissingFile",
            CliError::SchemaViolation { .. } => "SchemaViolation",
            CliError::NonMonotoneTenor { .. } => "NonMonotoneTenor",
            CliError::NonPositiveQuote { .. } => "NonPositiveQuote",
            CliError::NonMonotoneDate { .. } => "NonMonotoneDate",
            CliError::MissingInput { .. } => "MissingInput",
            CliError::Config { .. } => "ConfigError",
            CliError::Io { .. } => "IoError",
        }
    }
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
