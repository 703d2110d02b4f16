use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailed,
    InputError,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::PropertyFailed => "property_failed",
            Status::InputError => "input_error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailed => 1,
            Status::InputError => 2,
        }
    }
}

/// What a subcommand hands back: a JSON payload, an optional failure witness
/// and a short human summary.
pub struct Outcome {
    pub result: Value,
    pub witness: Option<Value>,
    pub text: String,
}

impl Outcome {
    pub fn ok(result: Value, text: impl Into<String>) -> Outcome {
        Outcome {
            result,
            witness: None,
            text: text.into(),
        }
    }

    pub fn failed(result: Value, witness: Value, text: impl Into<String>) -> Outcome {
        Outcome {
            result,
            witness: Some(witness),
            text: text.into(),
        }
    }
}

pub struct RunReport {
    pub subcommand: String,
    /// Input name to hex SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub result: Value,
    pub witness: Option<Value>,
    pub error: Option<String>,
    pub text: String,
    pub elapsed: Duration,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    /// Keys come out sorted because `serde_json` maps are ordered; timing is
    /// left out so identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let mut v = json!({
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "status": self.status.name(),
            "result": self.result,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        if let Some(e) = &self.error {
            v["error"] = Value::String(e.clone());
        }
        let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {} ({:.3} s)\n",
            self.subcommand,
            self.status.name(),
            self.elapsed.as_secs_f64()
        );
        for (name, d) in &self.inputs {
            s.push_str(&format!("input {name}: sha256 {d}\n"));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("error: {e}\n"));
        }
        s.push_str(&self.text);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!("witness: {w}\n"));
        }
        s
    }
}
