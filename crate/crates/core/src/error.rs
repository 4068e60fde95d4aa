use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate question id {id} (line {line})")]
    DuplicateId { id: u64, line: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("class `{class}` has {count} member(s), need at least {required}")]
    ClassTooSmall {
        class: &'static str,
        count: usize,
        required: usize,
    },

    #[error("fingerprint mismatch: expected {expected}, found {found}")]
    FingerprintMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected} columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported format version {found} (expected {expected})")]
    Version { expected: u32, found: u32 },

    #[error("model file, section `{section}`: {message}")]
    ModelFormat { section: &'static str, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
