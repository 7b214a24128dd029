use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the closed domain of an operation.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {name} = {index} out of range 0..{bound}")]
    IndexOutOfRange {
        name: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value {value} at {location}")]
    NonFinite { value: f64, location: String },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown phantom `{0}`")]
    UnknownPhantom(String),

    #[error("evaluation grid is empty")]
    EmptyGrid,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the file system rather than by data content.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
