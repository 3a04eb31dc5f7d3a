//! The `mosaic-select` command-line tool.

mod args;
mod bench;
mod commands;
mod config;
mod io;

use std::ffi::OsString;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};

use clap::Parser;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        Self { code: EXIT_INFEASIBLE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<mosaic_core::Error> for CliError {
    fn from(e: mosaic_core::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let argv = match config::expand(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| commands::dispatch(cli))) {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.code
        }
        Err(_) => EXIT_INTERNAL,
    }
}
