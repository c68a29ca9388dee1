use std::fmt;
use std::path::{Path, PathBuf};

/// Everything a subcommand can fail with, grouped by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Input file read fine but is not a usable PGM.
    Format {
        path: PathBuf,
        source: chaoslut::Error,
    },
    Validation(chaoslut::Error),
    Cipher(chaoslut::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Format { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Cipher(_) => 4,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl From<chaoslut::Error> for CliError {
    fn from(e: chaoslut::Error) -> Self {
        match e {
            chaoslut::Error::DegenerateOrbit { .. } => CliError::Cipher(e),
            _ => CliError::Validation(e),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Format { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Validation(e) => write!(f, "invalid input: {e}"),
            CliError::Cipher(e) => write!(f, "cipher error: {e}"),
        }
    }
}
