//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by corpus ingestion, featurization, reduction and
/// classification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A malformed line or cell in an input file, with its location.
    #[error("parse error in {path} at line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("duplicate document id `{doc_id}` (lines {first_line} and {second_line})")]
    DuplicateDocId {
        doc_id: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("unknown category `{0}`")]
    UnknownCategory(String),

    #[error("word `{0}` is not in the vocabulary")]
    UnknownWord(String),

    /// Document whose tokens are all outside the word-vector table; such
    /// documents cannot be represented as clouds and are excluded.
    #[error("document `{0}` has no in-table words")]
    EmptyCloud(String),

    /// Degenerate citation distribution: the lower and upper quartiles
    /// coincide, so extreme-class labeling is undefined.
    #[error("degenerate citation distribution in category `{0}`: q1 == q3")]
    DegenerateDistribution(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// Violated operation precondition or out-of-domain input.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
