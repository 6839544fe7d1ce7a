//! Command-line front end: `find`, `verify`, `sweep` and `spectral`.
//!
//! Every command prints a human-readable report followed by a single
//! `RESULT:` line of space-separated `key=value` pairs. Vectors are
//! written as comma-separated components.
//!
//! Exit codes: 0 when a certificate was produced, 1 when the method ran
//! without producing one, 2 on user error.

pub mod commands;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{Cli, Command, SweepFamily, SweepRow};
pub use spec::{parse_map_spec, read_map_spec, to_toml, SpecError};

/// Outcome of a command, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Certified = 0,
    NoCertificate = 1,
    UserError = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                Exit::UserError
            } else {
                Exit::Certified
            };
        }
    };
    match commands::execute(&cli.command, out) {
        Ok(exit) => exit,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            Exit::UserError
        }
    }
}
