mod args;
mod commands;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::Parser;

use crate::args::Cli;
use crate::report::{Report, EXIT_BUDGET, EXIT_ERROR};

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<gridclass::Error>() {
        Some(gridclass::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_ERROR,
    }
}

fn emit(cli: &Cli, report: &Report, elapsed: Duration) -> io::Result<()> {
    let mut out = io::stdout().lock();
    if cli.json {
        let v = report.to_json(elapsed.as_secs_f64() * 1000.0);
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json values serialise"))?;
    } else {
        for line in &report.text {
            writeln!(out, "{line}")?;
        }
    }
    out.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs as usize;
    let began = Instant::now();
    let outcome = match cli.budget_seconds {
        None => commands::run(&cli.command, jobs),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            let command = cli.command.clone();
            std::thread::spawn(move || {
                let _ = tx.send(commands::run(&command, jobs));
            });
            match rx.recv_timeout(Duration::from_secs_f64(secs)) {
                Ok(outcome) => outcome,
                Err(_) => {
                    eprintln!("error: budget of {secs} s exceeded");
                    return ExitCode::from(EXIT_BUDGET);
                }
            }
        }
    };
    match outcome {
        Ok(report) => {
            let _ = emit(&cli, &report, began.elapsed());
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
