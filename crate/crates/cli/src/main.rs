use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    match acyc::execute(acyc::args::Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("acyc: {e:#}");
            ExitCode::from(2)
        }
    }
}
