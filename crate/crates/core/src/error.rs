use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("solver failed after {attempts} attempts: {reason}")]
    SolverFailure { attempts: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
