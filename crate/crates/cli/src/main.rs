//! Batch command-line front end: parse an instance file, run the
//! pipeline, emit a canonical JSON report on stdout.
//!
//! Exit codes: 0 success, 2 input error (with position information for
//! parse failures), 3 internal assertion failure (a theorem-derived bound
//! or an audit cross-check broke, which must never happen). Timing goes
//! to stderr so that reruns are byte-identical on stdout.

mod instance;
mod report;

use clap::{Parser, Subcommand};
use drinrel_core::error::Error as CoreError;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "drinrel",
    about = "Exact linear-relation solver for Drinfeld modules over F_q(T)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Divisor tables, the degree bound d + l, and the per-place slope data
    Bound { file: PathBuf },
    /// Degree-minimal basis of the relation module
    Basis {
        file: PathBuf,
        /// Cross-check against the brute-force oracle and re-run the
        /// kernel search with extra degree headroom
        #[arg(long)]
        audit: bool,
    },
    /// Independence verdict with certificate
    Independent {
        file: PathBuf,
        #[arg(long)]
        audit: bool,
    },
    /// Brute-force basis of all relations up to a degree cap
    Oracle {
        file: PathBuf,
        /// Degree cap for the search
        #[arg(long)]
        deg: usize,
    },
    /// Check one candidate relation and recover its witness
    Verify {
        file: PathBuf,
        /// Comma-separated operator polynomials in t, one per point
        #[arg(long)]
        relation: String,
    },
    /// Recompute the bound divisor for an isomorphic twist
    Twist {
        file: PathBuf,
        /// The twisting unit, a nonzero rational function in T
        #[arg(long)]
        u: String,
    },
}

/// Failures, split by exit code.
pub enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// Internal assertion: exit code 3.
    Internal(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        match e {
            CoreError::TheoremBoundViolated(_) | CoreError::SolverOracleDisagreement(_) => {
                Failure::Internal(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(&cli.command);
    match outcome {
        Ok(json) => {
            println!("{json}");
            eprintln!("timing_ms={}", started.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Bound { file } => {
            let inst = instance::load(file)?;
            report::bound(&inst)
        }
        Command::Basis { file, audit } => {
            let inst = instance::load(file)?;
            report::basis(&inst, *audit)
        }
        Command::Independent { file, audit } => {
            let inst = instance::load(file)?;
            report::independent(&inst, *audit)
        }
        Command::Oracle { file, deg } => {
            let inst = instance::load(file)?;
            report::oracle(&inst, *deg)
        }
        Command::Verify { file, relation } => {
            let inst = instance::load(file)?;
            report::verify(&inst, relation)
        }
        Command::Twist { file, u } => {
            let inst = instance::load(file)?;
            report::twist(&inst, u)
        }
    }
}
