use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use strebel_cli::{run, Cli, CliError};

fn emit(cli: &Cli) -> Result<i32, CliError> {
    let outcome = run(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout().write_all(outcome.body.as_bytes())?,
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match emit(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
