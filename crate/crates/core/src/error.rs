use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the induction and evaluation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bitext sides are not aligned: source has {source_lines} lines, target has {target_lines}")]
    Alignment {
        source_lines: usize,
        target_lines: usize,
    },

    #[error("malformed sentence pair at line {line}: {reason}")]
    MalformedPair { line: usize, reason: String },

    #[error("tagging error at line {line}: token `{token}` has no `surface/TAG` form")]
    MissingTag { line: usize, token: String },

    #[error("tag `{tag}` is not covered by the tag match table")]
    UnknownTag { tag: String },

    #[error("token `{token}` in sentence pair {pair_id} carries no tag")]
    UntaggedToken { pair_id: usize, token: String },

    #[error("format error at line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error("duplicate sentence pair id {0}")]
    DuplicatePairId(usize),

    #[error("cannot take {requested} test pairs from a bitext of {available}")]
    SplitSize { requested: usize, available: usize },

    #[error("LCSR is undefined for two empty strings")]
    EmptyLcsrInput,

    #[error("contingency table is empty; G² is undefined")]
    EmptyTable,

    #[error("candidate references unknown sentence pair id {0}")]
    UnknownPairId(usize),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("need at least 2 scores to aggregate, got {0}")]
    SampleSize(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Broad class of the error, used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io { .. } => ErrorKind::Io,
            Error::Alignment { .. }
            | Error::MalformedPair { .. }
            | Error::MissingTag { .. }
            | Error::UnknownTag { .. }
            | Error::UntaggedToken { .. }
            | Error::Format { .. }
            | Error::DuplicatePairId(_) => ErrorKind::Format,
            Error::Contract(_)
            | Error::UnknownPairId(_)
            | Error::EmptyLcsrInput
            | Error::EmptyTable => ErrorKind::Contract,
            Error::SplitSize { .. } | Error::Config(_) | Error::SampleSize(_) => {
                ErrorKind::Config
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Config,
    Format,
    Contract,
}
