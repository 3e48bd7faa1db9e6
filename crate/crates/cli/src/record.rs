use artinian::{Backend, IdealDocument};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::commands::Report;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One experiment: enough to replay it and compare byte-for-byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    /// Instance hash; present in sweep stores.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub command: String,
    pub params: Value,
    pub backend: Backend,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<IdealDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    /// Milliseconds; only sweep records carry it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    pub version: String,
}

impl ExperimentRecord {
    pub fn from_report(r: &Report) -> Self {
        ExperimentRecord {
            key: None,
            command: r.command.to_string(),
            params: r.params.clone(),
            backend: r.backend,
            seed: r.seed,
            instance: r.instance.clone(),
            outcome: r.outcome,
            error: None,
            result: r.result.clone(),
            wall_time_ms: None,
            version: VERSION.to_string(),
        }
    }
}

/// SHA-256 of the canonical JSON of `(command, backend, params)`.
pub fn instance_key(command: &str, backend: Backend, params: &Value) -> String {
    let canonical = serde_json::to_string(&serde_json::json!([command, backend, params])).expect("keys serialize");
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Inline JSON, or the path of a JSON file.
pub fn load_expectation(arg: &str) -> CliResult<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::io(arg, e))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("--assert: {e}")))
}

/// `expected` must be contained in `actual`: objects by key, arrays
/// elementwise with equal length, scalars by equality.
pub fn check_subset(expected: &Value, actual: &Value, at: &str) -> CliResult<()> {
    let mismatch = || CliError::Mismatch {
        at: at.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    };
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, v) in e {
                let next = a.get(k).ok_or_else(mismatch)?;
                check_subset(v, next, &format!("{at}.{k}"))?;
            }
            Ok(())
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return Err(mismatch());
            }
            for (k, (v, w)) in e.iter().zip(a).enumerate() {
                check_subset(v, w, &format!("{at}[{k}]"))?;
            }
            Ok(())
        }
        (e, a) if e == a => Ok(()),
        _ => Err(mismatch()),
    }
}
