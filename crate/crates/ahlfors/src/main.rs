use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = ahlfors::cli::Cli::parse();
    match ahlfors::cli::run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ahlfors: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
