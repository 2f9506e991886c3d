use std::path::PathBuf;

/// Exit status for a completed command.
pub const EXIT_OK: i32 = 0;
/// Exit status for bad input, unreadable files or unwritable output.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit status for a refused computation that would exceed a resource cap.
pub const EXIT_CAP: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mawc_core::Error),
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap_violation() => EXIT_CAP,
            _ => EXIT_VALIDATION,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
