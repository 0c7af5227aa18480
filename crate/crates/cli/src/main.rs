use std::process::ExitCode;

use clap::Parser;

use padyn_cli::{execute, Cli, EXIT_PARSE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match std::fs::read(&cli.input) {
        Ok(bytes) => bytes,
        Err(e) => {
            eprintln!("padyn: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let run = execute(cli.command, &input, &cli.params());
    print!("{}", run.report);
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &run.report) {
            eprintln!("padyn: cannot write {}: {e}", path.display());
        }
    }
    if let (Some(path), Some(dot)) = (&cli.dot, &run.dot) {
        if let Err(e) = std::fs::write(path, dot) {
            eprintln!("padyn: cannot write {}: {e}", path.display());
        }
    }
    ExitCode::from(run.exit_code as u8)
}
