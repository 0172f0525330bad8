//! Run records: the arguments and outputs of one invocation, replayable.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{execute, load_catalog, Cli, Outcome};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Subcommand path, e.g. `tables verify`.
    pub command: String,
    pub catalog_hash: String,
    /// Arguments after the program name, without `--record`.
    pub inputs: Vec<String>,
    pub outputs: Value,
    pub passed: bool,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
}

pub fn unix_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// Drops `--record FILE` and `--record=FILE` from an argument list.
pub fn strip_record_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--record" {
            skip = true;
        } else if !a.starts_with("--record=") {
            out.push(a.clone());
        }
    }
    out
}

/// Subcommand words at the front of the argument list, skipping global flags.
pub fn command_name(inputs: &[String]) -> String {
    let takes_value = ["--catalog", "--threads"];
    let mut words = Vec::new();
    let mut skip = false;
    for a in inputs {
        if skip {
            skip = false;
        } else if takes_value.contains(&a.as_str()) {
            skip = true;
        } else if a.starts_with('-') {
            if !words.is_empty() {
                break;
            }
        } else {
            words.push(a.clone());
            if words.len() == 2 {
                break;
            }
        }
    }
    words.join(" ")
}

/// Copies a JSON value without wall-clock fields.
pub fn strip_timing(value: &Value) -> Value {
    match value {
        Value::Object(map) => Value::Object(
            map.iter().filter(|(k, _)| k.as_str() != "elapsed_ms").map(|(k, v)| (k.clone(), strip_timing(v))).collect(),
        ),
        Value::Array(items) => Value::Array(items.iter().map(strip_timing).collect()),
        other => other.clone(),
    }
}

impl RunRecord {
    pub fn new(inputs: Vec<String>, catalog_hash: &str, outcome: &Outcome, started_unix_ms: u64) -> Self {
        Self {
            command: command_name(&inputs),
            catalog_hash: catalog_hash.to_string(),
            inputs,
            outputs: outcome.value.clone(),
            passed: outcome.passed,
            started_unix_ms,
            finished_unix_ms: unix_ms(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Serialize)]
struct ReplayDoc {
    file: String,
    command: String,
    catalog_hash_matches: bool,
    outputs_match: bool,
    verdict_matches: bool,
}

/// Re-runs a record's inputs and compares the outputs, ignoring timings.
pub fn replay(path: &Path) -> Result<Outcome> {
    let rec = RunRecord::load(path)?;
    let argv = std::iter::once("diracidx".to_string()).chain(rec.inputs.iter().cloned());
    let cli = Cli::try_parse_from(argv)?;
    let catalog = load_catalog(&cli)?;
    let outcome = execute(&cli, &catalog)?;
    let doc = ReplayDoc {
        file: path.display().to_string(),
        command: rec.command.clone(),
        catalog_hash_matches: catalog.version_hash() == rec.catalog_hash,
        outputs_match: strip_timing(&outcome.value) == strip_timing(&rec.outputs),
        verdict_matches: outcome.passed == rec.passed,
    };
    let passed = doc.catalog_hash_matches && doc.outputs_match && doc.verdict_matches;
    let text = format!(
        "replay of {} ({}): catalog {}, outputs {}",
        doc.file,
        doc.command,
        if doc.catalog_hash_matches { "matches" } else { "differs" },
        if doc.outputs_match { "match" } else { "differ" },
    );
    Outcome::new(&doc, text, passed)
}
