use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} lies outside the unit interval [0, 1)")]
    OutOfUnitInterval { value: String },

    #[error("operation `{op}` is not supported for {kind}")]
    UnsupportedKind { op: &'static str, kind: &'static str },

    #[error("bit prefix is empty")]
    EmptyPrefix,

    #[error("digit delta horizon {horizon} is shorter than the requested length {needed}")]
    HorizonTooShort { horizon: usize, needed: usize },

    #[error("delta at index {index} does not flip the existing bit")]
    InconsistentDelta { index: usize },

    #[error("{what} is a dyadic rational; no finite dependency radius exists")]
    DyadicBoundary { what: String },

    #[error("no certified radius found within search limit {limit}")]
    SearchLimitExceeded { limit: usize },

    #[error("nonzero partial term at index {index} beyond predicted cutoff {cutoff}")]
    CutoffExceeded { index: usize, cutoff: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{0} is a perfect square")]
    PerfectSquareInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end.
    ///
    /// 1 for domain errors, 2 for malformed input, 3 for violated internal
    /// invariants. I/O failures are reported as 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CutoffExceeded { .. } | Error::InvariantViolation(_) => 3,
            Error::InvalidArgument(_) => 2,
            _ => 1,
        }
    }
}
