//! `mdlp`: generate, vet, solve and benchmark multiple discrete logarithm
//! instances. Every command prints one JSON report except `table` and
//! `bench`, which print their table or CSV directly.

mod args;
mod bench;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use report::{RunReport, Status};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Validate(a) => commands::validate(a),
        Command::Solve(a) => commands::solve(a),
        Command::Table(a) => commands::table(a),
        Command::Indexcalc(a) => commands::indexcalc(a),
        Command::Rankdemo(a) => commands::rankdemo(a),
        Command::Bench(a) => bench::run(a),
    };
    let report = RunReport::finish(argv.into_iter().skip(1).collect(), started, &outcome);
    let json = || serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    let text = match &outcome {
        Ok(out) => out.raw.clone().unwrap_or_else(json),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            json()
        }
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    let status = outcome.as_ref().map_or_else(|f| f.status, |_| Status::Success);
    ExitCode::from(status as u8)
}
