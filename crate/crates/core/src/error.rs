use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical scheme failed to reach its tolerance, or produced a
    /// value that should have been real but was not.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The axis solver could not bracket a root.
    #[error("solver error: {0}")]
    Solver(String),

    #[error("malformed state record: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
