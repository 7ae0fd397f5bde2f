//! Command-line front end: reads JSON groupoid descriptions, runs the
//! library computations and renders tables or JSON.

pub mod document;

mod commands;
mod render;

use thiserror::Error;

pub use commands::{run, Cli, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Unreadable input, malformed JSON, bad arguments or unknown names.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input describing an invalid object, or a failed
    /// computation.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 1,
        }
    }
}
