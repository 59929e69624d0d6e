//! `mextremal`: JSON-in, JSON-out front end to the extremal-map library.
//!
//! Exit status: 0 success / certified / true, 2 refuted / false / infeasible,
//! 3 inconclusive / unknown, 1 error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Pick-matrix classification of disc data.
    Pick,
    /// Blaschke degree of disc data by Schur reduction.
    Schur,
    /// Left-inverse certificate for a map into a domain.
    Certify,
    /// Completion of an Edigarian form of an ellipsoid extremal.
    Edigarian,
    /// Normal-form parameters and left inverse of ball 3-extremals.
    Ball3,
    /// Membership in the exponent class S_n.
    Sn,
    /// One-sided search for a witness against weak extremality.
    Falsify,
    /// Radial boundary-defect profile (JSON report plus CSV).
    Profile,
    /// Construction of a named map family.
    Family,
}

#[derive(Debug, Parser)]
#[command(name = "mextremal", version, about = "Construct, test and certify m-extremal maps")]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// JSON input for the verb; see `schemas/`.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Report path; stdout when absent. `profile` also writes the CSV next to it.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Seed for sampling and random restarts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Boundary samples for sup estimates.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Overrides the unimodular, singular and boundary bands together.
    #[arg(long)]
    pub tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("mextremal: {e}");
            ExitCode::from(1)
        }
    }
}
