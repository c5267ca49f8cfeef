use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid bit width {0} (must be 1..=64)")]
    InvalidWidth(u32),
    #[error("value {value:#x} does not fit in {width} bits")]
    ValueOverflow { value: u64, width: u32 },
    #[error("malformed bit string {0:?}")]
    BadBitString(String),
    #[error("width mismatch: expected {expected} bits, got {actual}")]
    WidthMismatch { expected: u32, actual: u32 },
    #[error("input {input} is not covered by any cube")]
    UncoveredMinterm { input: String },
    #[error("inconsistent function: input {input} maps to both {first} and {second}")]
    InconsistentFunction {
        input: String,
        first: String,
        second: String,
    },
    #[error("function has {0} inputs; at most 64 are supported")]
    WidthOverflow(u32),
    #[error("function with {n} inputs exceeds the limit of {limit} for this operation")]
    TooLarge { n: u32, limit: u32 },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unsupported feature: {message}")]
    UnsupportedFeature { line: usize, message: String },
    #[error("function has no rows")]
    EmptyFunction,
    #[error("input row {input} appears more than once")]
    DuplicateRow { input: String },
    #[error("input row {input} is missing")]
    MissingRow { input: String },
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("histogram counts sum to {total}, expected 2^{n}")]
    HistogramNotComplete { total: u128, n: u32 },
    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("embedding width {width} exceeds the explicit completion limit of {limit}")]
    TooWideForCompletion { width: u32, limit: u32 },
    #[error("pattern {pattern} needs more garbage values than its codeword leaves room for")]
    GarbageOverflow { pattern: String },
    #[error("malformed embedding file: {0}")]
    BadEmbedding(String),
    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
