//! Shared error type for the workspace.

use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by planning, estimation, generation, and reporting.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or argument (bad dimensions, unknown method
    /// name, malformed partition, ...).
    #[error("config error: {0}")]
    Config(String),

    /// Bad data encountered while consuming a dataset (non-finite value,
    /// malformed record, ...).
    #[error("data error: {0}")]
    Data(String),

    /// Filesystem failure, with the offending path attached.
    #[error("io error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Regression/fit failure (e.g. fewer than two valid points).
    #[error("fit error: {0}")]
    Fit(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
