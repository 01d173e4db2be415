use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Negative,
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        Input { path: path.to_string(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Everything a command prints. Maps are ordered so output is stable.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<Input>,
    pub checks: Vec<CheckLine>,
    pub groups: BTreeMap<String, String>,
    pub values: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, serde_json::Value>,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Vec::new(),
            checks: Vec::new(),
            groups: BTreeMap::new(),
            values: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn group(&mut self, label: impl Into<String>, g: impl ToString) {
        self.groups.insert(label.into(), g.to_string());
    }

    pub fn value(&mut self, label: &str, v: impl Serialize) {
        self.values.insert(label.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn witness(&mut self, label: &str, v: impl Serialize) {
        self.witnesses.insert(label.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    /// Negative as soon as any check failed.
    pub fn settle(mut self) -> Self {
        if self.checks.iter().any(|c| !c.passed) {
            self.verdict = Verdict::Negative;
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for i in &self.inputs {
            writeln!(out, "input: {} sha256:{}", i.path, i.sha256).unwrap();
        }
        for c in &self.checks {
            match (c.passed, c.detail.is_empty()) {
                (true, true) => writeln!(out, "pass {}", c.name),
                (true, false) => writeln!(out, "pass {}: {}", c.name, c.detail),
                (false, _) => writeln!(out, "FAIL {}: {}", c.name, c.detail),
            }
            .unwrap();
        }
        for (k, v) in &self.groups {
            writeln!(out, "{k} = {v}").unwrap();
        }
        for (k, v) in self.values.iter().chain(&self.witnesses) {
            writeln!(out, "{k}: {v}").unwrap();
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Negative => "negative",
        };
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    }
}
