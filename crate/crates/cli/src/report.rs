//! Versioned report envelope and its canonical form.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Keys dropped before comparing two reports.
const VOLATILE_KEYS: [&str; 2] = ["timestamp", "timing_ms"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub command: String,
    pub library_version: String,
    /// Everything the run depended on, defaults filled in.
    pub config: Value,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub results: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, config: &impl Serialize, results: T) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            library_version: coarse_menger::VERSION.to_string(),
            config: serde_json::to_value(config).expect("config is serializable"),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn canonical(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("report is serializable"))
    }
}

/// Compact JSON with sorted keys and the timestamp and timing fields removed
/// at every depth.
pub fn canonical_json(value: &Value) -> String {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                for key in VOLATILE_KEYS {
                    map.remove(key);
                }
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v = value.clone();
    strip(&mut v);
    v.to_string()
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timestamps_do_not_affect_the_canonical_form() {
        let mut a = Report::new("x", &serde_json::json!({"seed": 1}), vec![1, 2]);
        let mut b = a.clone();
        a.timestamp = 1;
        b.timestamp = 2;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.canonical(), b.canonical());
        let nested = serde_json::json!({"z": {"timing_ms": {"a": 3}, "k": 1}, "a": 0});
        assert_eq!(canonical_json(&nested), r#"{"a":0,"z":{"k":1}}"#);
    }
}
