//! Structured command reports with a verification section.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// Every command emits one report: the echoed command line, digests of
/// the inputs, a result payload, and a verification section with one
/// entry per re-checked postcondition. The process exits nonzero
/// exactly when a check fails or an error occurs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub verification: Vec<Check>,
    pub status: String,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            seed,
            inputs: Vec::new(),
            result: Value::Object(Map::new()),
            verification: Vec::new(),
            status: "ok".into(),
        }
    }

    pub fn add_input(&mut self, path: &str, contents: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(contents);
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        });
    }

    pub fn set_result(&mut self, key: &str, value: Value) {
        match &mut self.result {
            Value::Object(map) => {
                map.insert(key.to_string(), value);
            }
            _ => unreachable!("result payload is always an object"),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.verification.push(Check {
            check: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_checks_pass(&self) -> bool {
        self.verification.iter().all(|c| c.pass)
    }

    /// Mark the report as a structured mathematical failure.
    pub fn fail(&mut self, reason: impl Into<String>) {
        self.status = "error".into();
        self.set_result("failure", Value::String(reason.into()));
    }

    pub fn finalize_status(&mut self) {
        if self.status == "ok" && !self.all_checks_pass() {
            self.status = "check-failed".into();
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == "ok" {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("seed: {}\n", self.seed));
        for input in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", input.path, input.sha256));
        }
        out.push_str("result:\n");
        render_value(&mut out, &self.result, 1);
        out.push_str("verification:\n");
        for c in &self.verification {
            let mark = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {}: {}\n", c.check, c.detail));
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

fn render_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(out, v, indent + 1);
                    }
                    Value::String(s) if s.contains('\n') => {
                        out.push_str(&format!("{pad}{k}: |\n"));
                        let inner = "  ".repeat(indent + 1);
                        for line in s.lines() {
                            out.push_str(&format!("{inner}{line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, v, indent + 1);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
