use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = brauer::cli::Cli::parse();
    match brauer::cli::run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
