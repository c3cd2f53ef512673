// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! `zeno`: survival probabilities of a qubit alternating free evolution and
//! decoherence steps.
//!
//! Exit codes: 0 success, 1 output failure, 2 invalid input, 3 size cap exceeded.

mod args;
mod commands;
mod config;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use config::{CliError, CliResult, FileConfig};

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let report = match &cli.command {
        Command::Simulate(a) => commands::simulate(a, &file)?,
        Command::Classify(a) => commands::classify(a, &file)?,
        Command::Sweep(a) => commands::sweep(a, &file)?,
        Command::Physical(a) => commands::physical(a, &file)?,
        Command::Recohere => commands::recohere()?,
    };

    let format = cli.format.or(file.format).unwrap_or(Format::Csv);
    match cli.output.as_ref().or(file.output.as_ref()) {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(f);
            report.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(std::io::stdout().lock());
            report.write(format, &mut w)?;
            w.flush()?;
        }
    }
    for line in &report.notes {
        eprintln!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    // clap exits with code 2 on usage errors, matching validation failures
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
