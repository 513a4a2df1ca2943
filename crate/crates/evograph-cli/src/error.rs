//! Command-line error type with machine-readable categories and stable exit
//! codes.

use std::path::PathBuf;

/// Anything a command can fail with; `category` names are stable strings
/// and each category maps to a distinct nonzero exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Filesystem access failed.
    #[error("{path}: {source}")]
    Io {
        /// The file involved.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },
    /// An input file could not be parsed.
    #[error("{path}:{line}: {message}")]
    Format {
        /// The file involved.
        path: PathBuf,
        /// 1-based line number, 0 when the position is unknown.
        line: usize,
        /// What went wrong.
        message: String,
    },
    /// The inputs are structurally valid but unusable for the request.
    #[error("{0}")]
    Input(String),
    /// A computation reported a domain error.
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    /// Stable category token for scripting.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Format { .. } => "format",
            CliError::Input(_) => "input",
            CliError::Compute(_) => "compute",
        }
    }

    /// Stable nonzero exit code per category.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Format { .. } => 4,
            CliError::Input(_) => 5,
            CliError::Compute(_) => 6,
        }
    }

    /// Convenience constructor for filesystem failures.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
