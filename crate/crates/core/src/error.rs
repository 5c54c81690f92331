use std::path::PathBuf;

use crate::graph::UserId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("duplicate user id {0}")]
    DuplicateUser(UserId),

    #[error("unknown user id {0}")]
    UnknownUser(UserId),

    /// Pearson correlation of a constant (or too short) vector.
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("nothing to evaluate: no labeled users")]
    EmptyEvaluation,

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for failures caused by the filesystem rather than by the inputs' content.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
