//! Pass/fail records shared by the checks and the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check. A failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckItem {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckItem { check: check.into(), status: Status::Pass, witness: None }
    }

    pub fn pass_with(check: impl Into<String>, witness: Value) -> Self {
        CheckItem { check: check.into(), status: Status::Pass, witness: Some(witness) }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        CheckItem { check: check.into(), status: Status::Fail, witness: Some(witness) }
    }

    /// `pass` when `ok`, otherwise `fail` with the lazily built witness.
    pub fn from_bool(check: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            CheckItem::pass(check)
        } else {
            CheckItem::fail(check, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(items: &[CheckItem]) -> bool {
    items.iter().all(CheckItem::passed)
}

/// The document emitted by every command: checks, named outputs, and timings kept apart
/// so that everything except `timings_ms` is a pure function of the input and seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: Status,
    pub checks: Vec<CheckItem>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub outputs: BTreeMap<String, Value>,
    #[serde(default)]
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        Report {
            tool: "galdesc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            status: Status::Pass,
            checks: Vec::new(),
            outputs: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        if !item.passed() {
            self.status = Status::Fail;
        }
        self.checks.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = CheckItem>) {
        for item in items {
            self.push(item);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON with timings cleared, for reproducibility comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms.clear();
        copy.to_json()
    }

    /// A line per check and a closing verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {}", c.check));
            if let (false, Some(w)) = (c.passed(), &c.witness) {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        out.push_str(&format!("{}: {} checks, {verdict}\n", self.command, self.checks.len()));
        out
    }
}
