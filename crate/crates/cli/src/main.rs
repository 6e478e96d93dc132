use std::process::ExitCode;

use clap::Parser;

use epsident_cli::args::Cli;
use epsident_cli::error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = epsident_cli::configure_tolerance() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    match epsident_cli::run(&cli.command) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            match &report.verification {
                Some(v) if !v.passed => {
                    let e = CliError::Verification("see the failed checks above".into());
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code())
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
