use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An invalid configuration value. `field` is a dotted path such as
    /// `optimizer.c1`.
    #[error("invalid configuration at `{field}`: {message}")]
    Config { field: String, message: String },

    /// A numerical routine was asked for something outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested false-alarm probability cannot be produced by the
    /// detector under the chosen convention.
    #[error("false-alarm probability {requested:e} is unattainable (maximum attainable {max_attainable:e})")]
    UnattainablePfa { requested: f64, max_attainable: f64 },

    #[error("optimizer state: {0}")]
    OptimizerState(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A result file exists but its contents could not be interpreted.
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("scenario fingerprints differ ({a} vs {b}); refusing to compare")]
    FingerprintMismatch { a: String, b: String },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. }
            | Error::Domain(_)
            | Error::UnattainablePfa { .. }
            | Error::OptimizerState(_)
            | Error::FingerprintMismatch { .. } => 2,
            Error::Io { .. } | Error::Parse { .. } => 3,
        }
    }
}
