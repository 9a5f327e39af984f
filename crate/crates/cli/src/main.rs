//! `minrs`: censuses, closures and membership checks for rs functions.

mod builtins;
mod commands;
mod literal;
mod report;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "minrs",
    version,
    about = "Censuses, closures and membership checks for rs functions"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One JSON object per line.
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one function, or each function in a file, against the laws.
    Check(commands::CheckArgs),
    /// Enumerate a census of M(S) by prefix extension.
    Enumerate(commands::EnumerateArgs),
    /// Close a generator set under composition.
    Closure(commands::ClosureArgs),
    /// Replay the reference counts; fails if any differs.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    match &cli.command {
        Command::Check(args) => commands::check(args),
        Command::Enumerate(args) => commands::enumerate(args),
        Command::Closure(args) => commands::closure(args),
        Command::Verify { suite } => verify::run(*suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    let written = match cli.format {
        Format::Json => report.write_json(&mut out),
        Format::Table => report.write_table(&mut out),
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.failures() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
