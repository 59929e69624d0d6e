use std::fs;
use std::path::Path;

use mextremal_core::NumericPolicy;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Outcome class of a verb, mapped onto the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    Negative,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Self::Success => 0,
            Self::Negative => 2,
            Self::Inconclusive => 3,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::Success
        } else {
            Self::Negative
        }
    }
}

/// Everything needed to rerun a verb: no timestamps or host data, so equal
/// inputs give byte-identical reports.
#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: &'static str,
    pub verb: &'a str,
    pub seed: u64,
    pub policy: NumericPolicy,
    pub input: Value,
    pub status: Status,
    pub result: Value,
}

pub fn write(report: &Report<'_>, output: Option<&Path>) -> Result<(), crate::commands::CliError> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| crate::commands::CliError::Io(path.display().to_string(), e))?,
        None => print!("{text}"),
    }
    Ok(())
}
