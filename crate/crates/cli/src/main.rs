use std::process::ExitCode;

use clap::Parser;
use localcc_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, message }) => {
            eprintln!("localcc: {message}");
            ExitCode::from(code)
        }
    }
}
