use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = hyperinv_cli::Cli::parse();
    ExitCode::from(hyperinv_cli::execute(&cli))
}
