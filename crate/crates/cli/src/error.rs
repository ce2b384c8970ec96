use std::fmt;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Missing or inconsistent arguments (exit 1).
    Usage(String),
    /// Bad key, image, or file (exit 2).
    Validation(String),
    /// The attack pipeline failed (exit 3).
    Attack(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Attack(_) => 3,
        }
    }

    pub fn validation(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        CliError::Validation(format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Validation(msg) | CliError::Attack(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl std::error::Error for CliError {}
