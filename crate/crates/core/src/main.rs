use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fregcheck::cli::{run, Cli, EXIT_OK};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let mut text = outcome.output;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if outcome.status != EXIT_OK && text.starts_with("error:") {
        eprint!("{text}");
        return ExitCode::from(outcome.status as u8);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.status as u8)
}
