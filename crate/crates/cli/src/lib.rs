//! Command-line front end for the `epsident` engine.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

use args::Command;
use error::Result;
use report::Report;

pub const TOLERANCE_ENV: &str = "EPSIDENT_TOLERANCE";

/// Apply `EPSIDENT_TOLERANCE` if it is set.
pub fn configure_tolerance() -> Result<()> {
    let Ok(raw) = std::env::var(TOLERANCE_ENV) else {
        return Ok(());
    };
    let tol: f64 = raw
        .trim()
        .parse()
        .map_err(|_| error::CliError::Input(format!("{TOLERANCE_ENV}={raw:?} is not a number")))?;
    epsident::tolerance::set_tolerance(tol)?;
    Ok(())
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Bounds(a) => commands::bounds(a),
        Command::Epsident(a) => commands::epsident(a),
        Command::UnitSelect(a) => commands::unit_select(a),
        Command::Verify(a) => commands::verify(a),
    }
}
