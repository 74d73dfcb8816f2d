use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: invalid UTF-8 at byte offset {offset}", path.display())]
    Undecodable { path: PathBuf, offset: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no input documents")]
    NoDocuments,

    #[error("empty vocabulary")]
    EmptyVocabulary,

    #[error("no keyword occurrences")]
    EmptyOccurrences,

    #[error("min_df must be >= 1")]
    InvalidMinDf,

    #[error("dimension mismatch: expected dim={expected}, got dim={got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("non-finite coordinate in point {point}")]
    NonFinite { point: usize },

    #[error("invalid points CSV: {0}")]
    PointsCsv(String),

    #[error("invalid relation JSON: {0}")]
    MatrixJson(String),

    #[error("Minkowski exponent q must be a finite value > 0, got {0}")]
    InvalidExponent(f64),

    #[error("degenerate dataset: zero diameter")]
    DegenerateDataset,

    #[error("relation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("relation labels differ")]
    LabelMismatch,

    #[error("relation matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("relation entry ({row}, {col}) = {value} is outside [0, 1]")]
    OutOfRange { row: usize, col: usize, value: f64 },

    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("oracle limit: path enumeration supports at most {limit} points, got {got}")]
    OracleLimit { limit: usize, got: usize },

    #[error("schedule is not a hierarchy")]
    NotHierarchy,
}
