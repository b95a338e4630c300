//! `losc`: checks, tables and state evaluation for the Legendre oscillator.
//!
//! Exit status: 0 on success, 1 when a hard check or a computation fails,
//! 2 for usage, configuration and domain errors.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command};
use output::emit;

/// A bad argument combination or value, reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_status(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<losc_core::Error>() {
            return match e {
                losc_core::Error::Domain(_) | losc_core::Error::Dimension { .. } | losc_core::Error::Truncation { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { tol, output } => {
            let (doc, report) = commands::verify(output.truncation, tol)?;
            emit(&doc, output.format, output.out.as_deref())?;
            let failed: Vec<&str> = report.failed_hard().map(|c| c.name.as_str()).collect();
            eprintln!(
                "verify: {} hard checks, {} failed, {} findings and errata reported",
                doc.rows.rows.len(),
                failed.len(),
                doc.extra[0].rows.len()
            );
            for name in &failed {
                eprintln!("  FAILED {name}");
            }
            Ok(failed.is_empty())
        }
        Command::Table { grid_j, output } => {
            emit(&commands::table(grid_j)?, output.format, output.out.as_deref())?;
            Ok(true)
        }
        Command::Eval { z, j, gamma, grid_x, output } => {
            let doc = match (z, j, gamma) {
                (Some(z), _, _) => commands::eval_bg(z, grid_x, output.truncation)?,
                (None, Some(j), Some(gamma)) => commands::eval_gk(j, gamma, output.truncation)?,
                _ => return Err(UsageError("give --z, or --J with --gamma".into()).into()),
            };
            emit(&doc, output.format, output.out.as_deref())?;
            Ok(true)
        }
        Command::Overlap { z, gk, output } => {
            let doc = if !z.is_empty() {
                commands::overlap_bg(&z, output.truncation)?
            } else {
                commands::overlap_gk(&gk, output.truncation)?
            };
            emit(&doc, output.format, output.out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("losc: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
