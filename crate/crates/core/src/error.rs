use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dataset has no instances")]
    EmptyDataset,

    #[error("more than two classes: found {found:?}")]
    TooManyClasses { found: Vec<String> },

    #[error("expected {expected} attributes, got {got}")]
    AttributeCount { expected: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact enumeration supports at most {max} attribute nodes, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("{0}")]
    CrossValidation(String),

    #[error("model has no label for class {0}")]
    UnmappedClass(u8),

    #[error("model format: {0}")]
    Model(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
