//! File formats and subcommands of the `mutvis` tool.

pub mod commands;
pub mod format;
pub mod svg;

use serde_json::Value;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const CROSSING_MISMATCH: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const INVALID_INSTANCE: i32 = 4;
    pub const GENERATION: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    /// Wrong kind of instance for the command; carries a JSON description.
    #[error("{}", .0)]
    Crossing(Value),
    #[error("verification failed")]
    Verification(Value),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Invalid(_) => exit::INVALID_INSTANCE,
            CliError::Crossing(_) => exit::CROSSING_MISMATCH,
            CliError::Verification(_) => exit::VERIFICATION_FAILED,
            CliError::Generation(_) => exit::GENERATION,
            CliError::Io(_) => exit::PARSE,
        }
    }
}
