use std::path::PathBuf;

/// A type alias for `Result<T, Error>`.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by dataset ingestion, distance measures, and clustering.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    IoWrite {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty dataset")]
    EmptyDataset,

    /// Row widths must agree across the whole file. Rows are 1-based.
    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, field {field}: cannot parse {token:?} as a number")]
    InvalidNumber {
        row: usize,
        field: usize,
        token: String,
    },

    #[error("row {row}: label {found:?} differs from {expected:?} in the first channel file")]
    ChannelLabelMismatch {
        row: usize,
        expected: String,
        found: String,
    },

    #[error("channel file {path} has {found} rows, expected {expected}")]
    ChannelRowCount {
        path: PathBuf,
        expected: usize,
        found: usize,
    },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("distance matrix must be symmetric with a zero diagonal and no negative entries")]
    InvalidMatrix,

    #[error("row {row}: symbol {symbol:?} is outside the alphabet")]
    SymbolOutsideAlphabet { row: usize, symbol: char },
}
