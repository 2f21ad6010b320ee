//! The `qbell` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! domain errors, 3 when a series cannot be certified within its term cap.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
mod commands;
pub mod output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(qbell_core::Error),
}

impl From<qbell_core::Error> for CliError {
    fn from(e: qbell_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qbell_core::Error::Convergence { .. }) => EXIT_CONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `argv` (program name first), writes records to `out` and
/// diagnostics to `err`, and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return e.exit_code();
        }
    };
    let (format, timestamp) = (cli.format, !cli.no_timestamp);
    let rendered = commands::execute(cli.command, err)
        .and_then(|record| Ok((record.render(format, timestamp)?, record)));
    match rendered {
        Ok((text, record)) => {
            let _ = out.write_all(text.as_bytes());
            match record.verdict {
                Some(false) => EXIT_VERIFICATION_FAILED,
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "qbell: {e}");
            e.exit_code()
        }
    }
}
