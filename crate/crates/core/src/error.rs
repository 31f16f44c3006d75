use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters: grid sizes, preset names, operator orders, flags.
    #[error("configuration error: {0}")]
    Config(String),

    /// Arguments that are individually valid but do not fit together
    /// (wrong representation, non-nested grids, mismatched lengths).
    #[error("usage error: {0}")]
    Mismatch(String),

    #[error(
        "numerical instability at step {step} (t = {time:e}): dt = {dt:e}, L = {interaction}; reduce the CFL factor or the interaction factor"
    )]
    Instability {
        step: usize,
        time: f64,
        dt: f64,
        interaction: String,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code used by the CLI: 2 for configuration problems,
    /// 3 for numerical instability, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Mismatch(_) | Error::GridMismatch(_) | Error::Parse { .. } => 2,
            Error::Instability { .. } => 3,
            Error::Io { .. } => 1,
        }
    }
}
