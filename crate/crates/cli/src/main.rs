use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod error;
mod input;

use args::{Cli, Command};
use error::CliError;

fn apply_tolerance_override() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QBCAP_TOL") else {
        return Ok(());
    };
    let value: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("QBCAP_TOL is not a number: `{raw}`")))?;
    if !qbcap_core::tol::set_validation(value) {
        return Err(CliError::usage(format!("QBCAP_TOL must be positive and finite, got {value}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    apply_tolerance_override()?;
    match cli.command {
        Command::Capacity(a) => commands::capacity(a),
        Command::Measure(a) => commands::measure(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qbcap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
