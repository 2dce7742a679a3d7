use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = convskel_cli::args::Cli::parse();
    match convskel_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(if e.kind == "usage" { 2 } else { 1 })
        }
    }
}
