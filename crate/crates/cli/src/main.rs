mod args;
mod commands;
mod error;
mod instance;
mod record;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;
use record::{check_subset, load_expectation, ExperimentRecord};

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: &Cli) -> CliResult<()> {
    let expected = cli.output.assert.as_deref().map(load_expectation).transpose()?;
    let actual = if let Command::Sweep(a) = &cli.command {
        let summary = sweep::run(a)?;
        let value = serde_json::to_value(&summary).expect("summaries serialize");
        if cli.output.json {
            emit(&(serde_json::to_string_pretty(&value).expect("summaries serialize") + "\n"));
        } else {
            emit(&summary.text());
        }
        (value, "summary")
    } else {
        let report = commands::execute(&cli.command, cli.output.json)?;
        if cli.output.json {
            let record = ExperimentRecord::from_report(&report);
            emit(&(serde_json::to_string_pretty(&record).expect("records serialize") + "\n"));
        } else {
            emit(&report.text);
        }
        (report.result, "result")
    };
    match expected {
        Some(e) => check_subset(&e, &actual.0, actual.1),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
