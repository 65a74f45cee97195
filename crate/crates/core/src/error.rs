use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one of three
/// process exit codes used by the command-line driver.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input or mismatched operands.
    #[error("usage error: {0}")]
    Usage(String),
    /// The input is well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested computation exceeds a configured limit.
    #[error("resource limit: {what} requires {required} operations, budget is {budget}")]
    Budget {
        what: String,
        required: u128,
        budget: u128,
    },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Stable process exit code: 1 for usage/domain errors, 2 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Domain(_) => 1,
            Error::Budget { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
