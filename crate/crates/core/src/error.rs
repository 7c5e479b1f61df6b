use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the region where a model or formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// More colors than a [`ColorSet`](crate::ColorSet) can hold.
    #[error("capacity error: {colors} colors requested, at most {max} supported")]
    Capacity { colors: usize, max: usize },

    /// A graph file line that does not parse.
    #[error("{path}:{line}: malformed line: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// The same `(u, v, color)` triple appeared twice.
    #[error("{path}:{line}: duplicate edge ({u}, {v}) with color {color}")]
    DuplicateEdgeColor {
        path: PathBuf,
        line: usize,
        u: usize,
        v: usize,
        color: usize,
    },

    /// A vertex or color id outside its index space.
    #[error("{path}:{line}: {what} {value} out of range (limit {limit})")]
    OutOfRange {
        path: PathBuf,
        line: usize,
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Serialization { path: PathBuf, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
