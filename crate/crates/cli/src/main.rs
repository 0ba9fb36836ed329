//! `rspbet`: randomized shortest path betweenness from the command line.
//!
//! Exit codes: 0 success, 1 oracle failure, 2 invalid input, 3 numerical
//! failure. Errors print one `error: reason=<tag>: <message>` line.

mod commands;
mod dot;
mod error;
mod measure;
mod output;
mod source;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "rspbet",
    version,
    about = "Randomized shortest path betweenness centralities"
)]
struct Cli {
    /// Worker threads; 1 gives byte-identical reruns.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every node with one measure.
    Compute(commands::ComputeArgs),
    /// Score every node over a grid of inverse temperatures.
    Sweep(commands::SweepArgs),
    /// Rank agreement between two score files.
    Compare(commands::CompareArgs),
    /// Check closed-form pair quantities against truncated path sums.
    OracleCheck(commands::OracleArgs),
    /// Graphviz document colored by score quantiles.
    ExportDot(commands::DotArgs),
    /// Write a generated graph as an edge list.
    Generate(commands::GenerateArgs),
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::validation("invalid-threads", "--threads must be at least 1"));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::validation("invalid-threads", e.to_string()))?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads(cli.threads)?;
    let threads = cli.threads;
    match &cli.command {
        Command::Compute(args) => commands::compute(args, threads),
        Command::Sweep(args) => commands::sweep(args, threads),
        Command::Compare(args) => commands::compare(args, threads),
        Command::OracleCheck(args) => commands::oracle_check(args),
        Command::ExportDot(args) => commands::export_dot(args),
        Command::Generate(args) => commands::generate(args, threads),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
