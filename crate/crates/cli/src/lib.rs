//! Command implementations behind the `diracidx` binary.
//!
//! Every command produces an [`Outcome`]: a JSON document, a plain-text
//! rendering of it, and a pass/mismatch verdict that decides the exit code.

pub mod args;
pub mod commands;
pub mod record;
pub mod tables;
mod text;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use diracidx::catalog::Catalog;

pub use args::{Cli, Command};
pub use record::RunRecord;

/// Exit code for a passing run.
pub const EXIT_PASS: i32 = 0;
/// Exit code when a computed value disagrees with its reference.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit code for bad arguments, unknown ids or unsupported requests.
pub const EXIT_USAGE: i32 = 2;

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn new<T: Serialize>(doc: &T, text: String, passed: bool) -> Result<Self> {
        Ok(Self { value: serde_json::to_value(doc)?, text, passed })
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_MISMATCH
        }
    }
}

/// Loads the catalog named on the command line, or the bundled one.
pub fn load_catalog(cli: &Cli) -> Result<Catalog> {
    Ok(match &cli.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::bundled(),
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, catalog: &Catalog) -> Result<Outcome> {
    commands::dispatch(&cli.command, catalog)
}

/// Maps an error to an exit code: library errors describing bad input are
/// usage errors, failed invariants are mismatches.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    use diracidx::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Invariant { .. } | E::Inconsistent(_) | E::NonIntegral(_) | E::Catalog(_)) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Serializes a document the way every command prints it.
pub fn to_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}
