//! Command-line front end: matrix files, run reports and subcommand dispatch.
//!
//! Matrices are JSON documents `{"dim": n, "rows": [[..], ..]}`, given either
//! as a path or inline. Every successful or rejected run prints one
//! [`RunReport`] on stdout. Exit codes: 0 success or property holds,
//! 1 property violated or hypothesis rejected (the report is still printed),
//! 2 input error.

mod commands;
mod matrix_file;

pub use commands::{run_command, CommandOutcome};
pub use matrix_file::{parse_matrix_file, parse_matrix_json, MatrixFile};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(rename = "inputs-digest")]
    pub inputs_digest: String,
    pub outputs: Value,
    pub elapsed_ms: u64,
}

impl RunReport {
    /// The digest is SHA-256 over the compact JSON of `inputs` (parsed
    /// matrices and parameters, keys sorted), so it does not depend on file
    /// paths or formatting.
    pub fn new(command: &str, inputs: &Value, outputs: Value, elapsed_ms: u64) -> Self {
        let canonical = serde_json::to_string(inputs).expect("JSON values always serialize");
        Self {
            command: command.to_string(),
            inputs_digest: hex::encode(Sha256::digest(canonical.as_bytes())),
            outputs,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
