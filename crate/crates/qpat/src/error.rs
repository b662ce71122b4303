//! Crate-wide error type and the CLI exit-code convention.

use thiserror::Error;

/// Errors produced by the model, the pipeline, and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument to a geometric or analytic operation
    /// (coincident focal points, violated triangle inequality, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid or inconsistent run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// A numerical guard fired: tolerance exceeded, denominator too small,
    /// insufficient sampling coverage.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("i/o error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code: 1 config, 2 numerical (incl. domain), 3 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Domain(_) | Error::Numerical(_) => 2,
            Error::Io(_) | Error::Format(_) => 3,
        }
    }
}
