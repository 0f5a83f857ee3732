use std::process::ExitCode;

use clap::Parser;
use rieszlab_cli::cli::Format;
use rieszlab_cli::{commands, Cli};
use serde_json::json;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let doc = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{doc}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.global.report {
        if let Err(e) = report.write(path) {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            return ExitCode::from(2);
        }
    }
    match cli.global.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
