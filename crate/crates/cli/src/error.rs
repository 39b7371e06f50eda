use std::fmt;

/// Everything that ends a run with a nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(cacc::Error),
    /// A cross-check or cache verification disagreed.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cacc::Error::Resource { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cacc::Error> for CliError {
    fn from(e: cacc::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(cacc::Error::Io(e))
    }
}
