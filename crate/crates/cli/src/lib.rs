//! Command-line front end for `stokes-hbim`: parameter sweeps, figure data,
//! exponent optimization and oracle validation, all emitted as CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{Cli, Command};
pub use error::{CliError, CliResult};

/// Parses `argv` (including the program name), runs the subcommand, and
/// returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let argv = match config::expand_argv(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("stokes-hbim: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => VALIDATION_FAILED,
        Err(e) => {
            eprintln!("stokes-hbim: {e}");
            e.exit_code()
        }
    }
}

/// Exit code of a `validate` run that completed but failed its thresholds.
pub const VALIDATION_FAILED: i32 = 4;

/// Runs one subcommand. `Ok(false)` means `validate` reported FAIL.
pub fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Profile(a) => commands::profile::run(a).map(|()| true),
        Command::Depth(a) => commands::depth::run(a).map(|()| true),
        Command::Optimize(a) => commands::optimize::run(a).map(|()| true),
        Command::Validate(a) => {
            let verdict = commands::validate::run(a)?;
            eprintln!("{}", if verdict.passed { "PASS" } else { "FAIL" });
            Ok(verdict.passed)
        }
        Command::Figures(a) => {
            let files = commands::figures::run(a)?;
            let mut out = std::io::stdout().lock();
            for f in files {
                let _ = writeln!(out, "{}", f.display());
            }
            Ok(true)
        }
    }
}
