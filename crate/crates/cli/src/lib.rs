//! Command-line front end for the `uur-core` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod source;

use args::{Cli, Command};
pub use commands::Outcome;
pub use error::CliError;

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Omega => commands::omega(g),
        Command::Bound(a) => commands::bound(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Oracle(a) => commands::oracle(g, a),
        Command::ScanTheta(a) => commands::scan(g, a),
    }
}
