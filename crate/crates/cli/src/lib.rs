//! `rpr` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 invalid
//! geometry, 4 degenerate slice.

mod args;
mod commands;
mod output;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Common, Format, Range, WindowArg};
pub use output::sha256_hex;

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }
}

impl From<rpr_core::Error> for Failure {
    fn from(e: rpr_core::Error) -> Self {
        use rpr_core::Error as E;
        let code = match e {
            E::DegeneratePlatform { .. } | E::InvalidGeometry(_) => EXIT_GEOMETRY,
            E::DegenerateSlice { .. } | E::SharedFactor => EXIT_DEGENERATE,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

/// Parses `argv`, runs the command and returns the exit code. The primary
/// result goes to standard output, diagnostics to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    if let Some(n) = cli.command.common().workers {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    match commands::execute(&cli.command) {
        Ok(stdout) => {
            print!("{stdout}");
            0
        }
        Err(f) => {
            eprintln!("rpr {}: {}", cli.command.name(), f.message);
            f.code
        }
    }
}
