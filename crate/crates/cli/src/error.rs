//! Errors for record loading and configuration.

use std::path::PathBuf;

/// Failures while loading WFDB or CSV records.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    /// Malformed header or CSV content, with the 1-based line it came from.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    /// A storage layout this loader deliberately does not read.
    #[error("unsupported WFDB input: {0} (only single-file format 16 records are supported)")]
    UnsupportedFormat(String),

    /// Signal data shorter or longer than the header declares.
    #[error("{path}: data is {actual} bytes but the header implies {expected}")]
    TruncatedData {
        path: PathBuf,
        expected: u64,
        actual: u64,
    },

    /// A signal description that is not one of the 12 standard lead names.
    #[error("unknown lead description {0:?}")]
    UnknownLead(String),

    /// A required lead column is absent from a CSV header.
    #[error("missing lead column {0:?} in CSV header")]
    MissingLead(&'static str),

    #[error(transparent)]
    Record(#[from] ecgforge_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Failures while assembling the pipeline configuration.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("config key `{key}`: {msg}")]
    Type { key: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ConfigError {
    pub fn bad_value(key: &str, msg: impl Into<String>) -> Self {
        ConfigError::Type {
            key: key.to_string(),
            msg: msg.into(),
        }
    }
}
