//! Report envelope, output and error codes.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use z2square::Error;

use crate::{commands, Command, RunConfig};

pub const OK: u8 = 0;
pub const BAD_INPUT: u8 = 2;
pub const INCONCLUSIVE: u8 = 3;
pub const HYPOTHESIS: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: BAD_INPUT, message: message.into() }
    }

    pub fn code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SubdivisionCap(_) => INCONCLUSIVE,
            Error::NotACycle(_) | Error::NotSmall | Error::NonMonotoneMap(_) => HYPOTHESIS,
            _ => BAD_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

/// What a command hands back: the hypothesis block, the result, the code.
pub struct Outcome {
    pub hypotheses: Value,
    pub result: Value,
    pub code: u8,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    command: Command,
    config: &'a RunConfig,
    status: &'static str,
    exit_code: u8,
    hypotheses: &'a Value,
    result: &'a Value,
}

fn status_name(code: u8) -> &'static str {
    match code {
        OK => "ok",
        INCONCLUSIVE => "inconclusive",
        HYPOTHESIS => "hypothesis_violated",
        _ => "error",
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn read_input(cfg: &RunConfig) -> Result<(String, String), CliError> {
    let path = cfg.input.as_ref().ok_or_else(|| CliError::input("--input is required for this command"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((path.display().to_string(), text))
}

/// Parses JSON, reporting the file and position on failure.
pub fn parse_json<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{name}: {e}")))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<u8, CliError> {
    let outcome = match command {
        Command::Homology => commands::homology(cfg),
        Command::Essential => commands::essential(cfg),
        Command::Symsquare => commands::symsquare(cfg),
        Command::BuSolve => commands::bu_solve(cfg),
        Command::Chords => commands::chords(cfg),
        Command::Corr => commands::corr(cfg),
    }?;
    let report = Report {
        tool: "z2square",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config: cfg,
        status: status_name(outcome.code),
        exit_code: outcome.code,
        hypotheses: &outcome.hypotheses,
        result: &outcome.result,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match &cfg.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(outcome.code)
}
