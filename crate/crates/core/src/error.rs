//! Error type shared by every pipeline stage.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A spec or configuration value violates one of its invariants.
    #[error("invalid {what}: {reason}")]
    InvalidSpec { what: &'static str, reason: String },

    /// An input file does not follow the documented layout. `row` is the
    /// 1-based line number in the file (the header is line 1).
    #[error("format error at line {row}: {reason}")]
    Format { row: usize, reason: String },

    /// A field failed to parse as the expected numeric type.
    #[error("parse error at line {row}, column `{column}`: {reason}")]
    Parse {
        row: usize,
        column: String,
        reason: String,
    },

    /// The file's channel count differs from what the caller expected.
    #[error("channel count mismatch: expected {expected}, found {found}")]
    ChannelCount { expected: usize, found: usize },

    /// The recording is too short for the requested window.
    #[error("input too short: need at least {needed} samples, have {have}")]
    InputTooShort { needed: usize, have: usize },

    /// Matrix, segment or row dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A window shorter than the feature definitions allow.
    #[error("window too short: {have} samples, need at least 2")]
    WindowTooShort { have: usize },

    /// Input contained NaN or infinite values.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// Per-feature failure annotated with its channel (1-based) and kind.
    #[error("feature {kind} on channel {channel}: {source}")]
    Feature {
        channel: usize,
        kind: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// The training data cannot support the requested model.
    #[error("degenerate training data: {0}")]
    DegenerateData(String),

    /// A classifier hyperparameter is out of range for the data.
    #[error("hyperparameter error: {0}")]
    Hyperparameter(String),

    /// A label was not in the declared class list.
    #[error("unknown label: {0}")]
    Label(String),

    /// The train/test split produced an unusable partition.
    #[error("split error: {0}")]
    Split(String),

    /// An operation that needs data received none.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A model file could not be interpreted.
    #[error("model file error: {0}")]
    ModelFormat(String),

    /// A file could not be opened.
    #[error("cannot open {path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
