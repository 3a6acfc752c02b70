use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The external compressor failed, timed out, or produced nothing.
    #[error("code-length estimation failed: {0}")]
    Backend(String),

    /// A datum with at least one bit estimated to zero bits. Only a faulty
    /// external backend can produce this.
    #[error("datum of {len} bits has zero code length; occurrence is undefined")]
    ZeroCodeLength { len: usize },

    #[error("transaction {index}: {source}")]
    Transaction {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("pair ({row}, {col}): {source}")]
    Pair {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("distance undefined: both strings have zero code length")]
    UndefinedDistance,

    /// The oracle could not certify that no frequent pattern is longer than
    /// its enumeration cap.
    #[error("oracle enumeration up to {max_len} bits cannot certify completeness; raise max_len")]
    Incomplete { max_len: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn at_transaction(self, index: usize) -> Error {
        Error::Transaction {
            index,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping index context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Transaction { source, .. } | Error::Pair { source, .. } => source.root(),
            other => other,
        }
    }
}
