//! The `rees` command-line front end: instance generation, single computations,
//! verification runs and campaigns, each producing one versioned report.

mod args;
mod campaign;
mod commands;
mod text;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use rees_core::Error;

pub use args::{FieldArgs, Format, InstanceArgs, OutputArgs};
pub use campaign::{parse_entries, CampaignEntry};

/// Exit codes.
pub mod exit {
    /// Finished, every claimed verdict true (rejected instances included).
    pub const OK: i32 = 0;
    /// A claimed verdict is false; the report is still written.
    pub const FALSE_VERDICT: i32 = 1;
    /// Bad command line or input.
    pub const USAGE: i32 = 2;
    /// A step, time or size limit was hit.
    pub const BUDGET: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "rees", version, about = "Exact Rees algebras of point ideals in the projective plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point sets.
    #[command(subcommand)]
    Points(PointsCommand),
    /// Generators of the ideal of the points, or of its degree-t piece.
    Ideal(commands::IdealArgs),
    /// Hilbert function, alpha, sigma and genericity of the points.
    Hilbert(commands::HilbertArgs),
    /// Hilbert-Burch presentation matrix of the ideal of the points.
    Presentation(commands::PresentationArgs),
    /// Rees ideals of I_t.
    #[command(subcommand)]
    Rees(ReesCommand),
    /// Graded Betti table and perfection of an ideal.
    Resolve(commands::ResolveArgs),
    /// Many verification runs with one summary.
    Campaign(campaign::CampaignArgs),
}

#[derive(Subcommand, Debug)]
pub enum PointsCommand {
    /// Generate or normalize a point set.
    Gen(commands::PointsGenArgs),
}

#[derive(Subcommand, Debug)]
pub enum ReesCommand {
    /// The Rees ideal by elimination, with its minimal bihomogeneous generators.
    Eliminate(commands::EliminateArgs),
    /// The predicted generators at t = d + 1, labelled by where they come from.
    Theorem(commands::TheoremArgs),
    /// Compare the predicted and eliminated ideals and check every claimed property.
    Verify(commands::VerifyArgs),
}

/// A finished command: the rendered report and its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Exit code for an error that prevented a report.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::BoundExceeded { .. } | Error::RetriesExhausted(_) => exit::BUDGET,
        _ => exit::USAGE,
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Points(PointsCommand::Gen(a)) => commands::points_gen(a),
        Command::Ideal(a) => commands::ideal(a),
        Command::Hilbert(a) => commands::hilbert(a),
        Command::Presentation(a) => commands::presentation(a),
        Command::Rees(ReesCommand::Eliminate(a)) => commands::eliminate(a),
        Command::Rees(ReesCommand::Theorem(a)) => commands::theorem(a),
        Command::Rees(ReesCommand::Verify(a)) => commands::verify(a),
        Command::Resolve(a) => commands::resolve(a),
        Command::Campaign(a) => campaign::run(a),
    }
}

fn output_of(cli: &Cli) -> Option<&OutputArgs> {
    match &cli.command {
        Command::Points(PointsCommand::Gen(a)) => Some(&a.out),
        Command::Ideal(a) => Some(&a.out),
        Command::Hilbert(a) => Some(&a.out),
        Command::Presentation(a) => Some(&a.out),
        Command::Rees(ReesCommand::Eliminate(a)) => Some(&a.out),
        Command::Rees(ReesCommand::Theorem(a)) => Some(&a.out),
        Command::Rees(ReesCommand::Verify(a)) => Some(&a.out),
        Command::Resolve(a) => Some(&a.out),
        Command::Campaign(a) => Some(&a.out),
    }
}

/// Parses `argv` (including the program name), runs the command, writes the
/// report to standard output or `--output`, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let written = match output_of(&cli).and_then(|o| o.output.as_ref()) {
        Some(path) => std::fs::write(path, &outcome.report),
        None => std::io::stdout().write_all(outcome.report.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write the report: {e}");
        return exit::USAGE;
    }
    outcome.code
}
