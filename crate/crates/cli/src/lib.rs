//! Command-line front end: argument types, the JSON run report and command
//! dispatch. The binary in `main.rs` only parses arguments and prints.

pub mod args;
pub mod catalog;
mod commands;
pub mod report;

use thiserror::Error;

pub use args::{Cli, Command, Format};
pub use report::{Outcome, RunReport, SCHEMA_VERSION};

/// Exit status for a report whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status when a check failed or a computation broke down.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for malformed input or arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] deform_core::Error),
}

impl CliError {
    /// Bad input exits with the usage status; anything else is a failure.
    pub fn exit_code(&self) -> i32 {
        use deform_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Core(
                E::Parse { .. } | E::UnknownVariable(_) | E::CarrierMismatch(..) | E::Dimension(_) | E::Invalid(_),
            ) => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAIL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command line; `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: &[String]) -> (RunReport, i32) {
    let result = commands::dispatch(cli);
    let (outcome, code, error) = match result {
        Ok(o) => {
            let code = if o.passed() { EXIT_PASS } else { EXIT_FAIL };
            (o, code, None)
        }
        Err(e) => (Outcome::default(), e.exit_code(), Some(e.to_string())),
    };
    (RunReport::new(cli, argv, outcome, error), code)
}
