use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("m = {m} is outside the supported range {allowed}")]
    UnsupportedM { m: usize, allowed: &'static str },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("algebra closure passed the dimension cap {cap}")]
    DimCapExceeded { cap: usize },

    #[error("span is not closed under multiplication (product of basis rows {left} and {right})")]
    NotClosed { left: usize, right: usize },

    #[error("integer overflow in exact elimination kernel")]
    Overflow,

    #[error("orbit matrices are dependent: rank {rank} < count {count}")]
    IndependenceFailure { rank: usize, count: usize },

    #[error(
        "distance-regularity violated: vertices ({x}, {y}) disagree on the count for (i, j) = ({i}, {j})"
    )]
    Violation {
        x: usize,
        y: usize,
        i: usize,
        j: usize,
    },

    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),

    #[error("unknown check id: {0}")]
    UnknownCheck(String),

    #[error("malformed matrix file: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
