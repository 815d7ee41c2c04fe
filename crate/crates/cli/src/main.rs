use std::process::ExitCode;

use clap::Parser;

use superharm_cli::config::Cli;

fn main() -> ExitCode {
    superharm_cli::commands::run(Cli::parse()).into()
}
