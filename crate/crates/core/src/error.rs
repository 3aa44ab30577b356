use thiserror::Error;

/// Errors raised by solvers, samplers and experiment drivers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An experiment or distribution configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),
    /// The requested computation exceeds a configured work or size budget.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// No path with at most `k` edges reaches the target.
    #[error("infeasible: no lattice path to ({n},0,..) with at most {k} edges")]
    Infeasible { n: usize, k: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
