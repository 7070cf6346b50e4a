use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    match dmnai_cli::cli::run(dmnai_cli::cli::Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
