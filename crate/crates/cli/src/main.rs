use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(racah_cli::run(racah_cli::Cli::parse()))
}
