use std::io;
use std::process::ExitCode;

use clap::Parser;

use pipec_cli::{execute, Cli, CliError, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match execute(cli, &mut out) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Failure) => ExitCode::from(1),
        // Output cut short by a closed pipe (`pipec list | head`) is not an
        // error of the command.
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
