use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use torus_zeta_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            eprintln!("torus-zeta: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
