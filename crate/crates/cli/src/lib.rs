//! Library behind the `bhclass` command: catalog handling, command
//! implementations and report rendering.
//!
//! Every command produces a [`Rendered`] pair: a JSON document (the machine
//! format) and a text rendering of the same content.

pub mod catalog;
pub mod commands;
mod text;

use std::fmt;

use bhclass::Error;

pub use commands::{
    cmd_ahss, cmd_bh_image, cmd_classify, cmd_embed6, cmd_pi3, cmd_tables, ClassifyOptions, Format, Rendered,
};

/// Name and version of the machine-readable report schema.
pub const SCHEMA: &str = "bhclass-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    /// Invalid input or usage.
    pub const INPUT: u8 = 2;
    /// Unsupported or not-tabulated query.
    pub const UNSUPPORTED: u8 = 3;
    /// Internal consistency check failed.
    pub const INTERNAL: u8 = 4;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: exit::INPUT,
            message: message.into(),
        }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError {
            code: exit::UNSUPPORTED,
            message: message.into(),
        }
    }

    pub fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::NotTabulated(_) | Error::SearchTooLarge { .. } => exit::UNSUPPORTED,
        Error::Invariant(_) => exit::INTERNAL,
        _ => exit::INPUT,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}
