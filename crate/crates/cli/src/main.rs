//! `sumcolor`: chordal-graph sum-coloring toolbox.
//!
//! Exit codes: 0 success, 1 negative decision, 2 usage or parse error,
//! 3 internal invariant violation (including caught panics).

mod args;
mod cmd;
mod fmt;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::Parser;

/// Non-success outcomes, ordered by exit code.
pub enum Failure {
    /// The command ran and answered "no"; output was already printed.
    Negative,
    /// Bad arguments, unreadable or malformed input, or a request outside a
    /// documented budget.
    Usage(String),
    /// A should-never-happen condition; the run cannot be trusted.
    Internal(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Negative => ExitCode::from(1),
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Internal(msg) => {
                eprintln!("internal invariant violated: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away, as Unix tools do.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = args::Cli::parse();
    match panic::catch_unwind(AssertUnwindSafe(|| cmd::run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(failure)) => failure.report(),
        Err(_) => {
            // The default hook already printed the panic message.
            eprintln!("internal invariant violated: aborting");
            ExitCode::from(3)
        }
    }
}
