use crate::input::{InputError, Source};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::time::Duration;

/// Everything a subcommand found, before rendering.
#[derive(Debug, Default)]
pub struct Report {
    pub inputs: Vec<Source>,
    pub verdicts: BTreeMap<String, bool>,
    pub witnesses: Map<String, Value>,
    pub details: Map<String, Value>,
}

impl Report {
    pub fn new(inputs: Vec<Source>) -> Report {
        Report { inputs, ..Report::default() }
    }

    pub fn verdict(&mut self, name: &str, holds: bool) {
        self.verdicts.insert(name.to_string(), holds);
    }

    /// Record a library verdict, keeping its witness when it fails.
    pub fn checked<W: Serialize>(&mut self, name: &str, v: &peirce::verdict::Verdict<W>) {
        self.verdict(name, v.holds);
        if let Some(w) = &v.witness {
            self.witness(name, w);
        }
    }

    pub fn witness<T: Serialize>(&mut self, name: &str, w: &T) {
        self.witnesses.insert(name.to_string(), to_value(w));
    }

    pub fn detail<T: Serialize>(&mut self, name: &str, d: &T) {
        self.details.insert(name.to_string(), to_value(d));
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn exit_code(&self) -> u8 {
        if self.all_hold() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self, command: &str, elapsed: Option<Duration>) -> Value {
        let mut doc = json!({
            "command": command,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "details": self.details,
        });
        if let Some(t) = elapsed {
            doc["timings"] = json!({ "total_ms": t.as_secs_f64() * 1000.0 });
        }
        doc
    }

    pub fn verdict_lines(&self) -> String {
        self.verdicts.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn error_json(command: &str, e: &InputError) -> Value {
    let mut error = json!({ "kind": e.kind(), "message": e.to_string() });
    if let InputError::Parse { path, line, column, .. } = e {
        error["file"] = json!(path);
        error["line"] = json!(line);
        error["column"] = json!(column);
    }
    json!({ "command": command, "tool_version": env!("CARGO_PKG_VERSION"), "error": error })
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json renders");
    s.push('\n');
    s
}
