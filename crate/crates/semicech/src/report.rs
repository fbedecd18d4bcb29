//! Run reports: what was computed and which checks vouch for it.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// A computed value together with the check that certifies it.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Entry {
    pub name: String,
    pub value: Value,
    pub verified_by: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_sha256: String,
    pub results: Vec<Entry>,
    pub ledger: Vec<Check>,
}

/// SHA-256 over the command line and the contents of every input file, each
/// length-prefixed so that boundaries are unambiguous.
pub fn digest_inputs<'a>(command: &'a [String], inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for part in command.iter().map(String::as_bytes).chain(inputs) {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs_sha256: String) -> Self {
        RunReport {
            command,
            inputs_sha256,
            results: Vec::new(),
            ledger: Vec::new(),
        }
    }

    /// Records a check and returns whether it passed.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.ledger.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn result(&mut self, name: impl Into<String>, value: impl Into<Value>, verified_by: impl Into<String>) {
        self.results.push(Entry {
            name: name.into(),
            value: value.into(),
            verified_by: verified_by.into(),
        });
    }

    /// Adds a failing check for every result whose certifying check is
    /// missing or failed, and for an empty ledger.
    pub fn seal(&mut self) {
        let mut missing = Vec::new();
        for e in &self.results {
            if !self.ledger.iter().any(|c| c.name == e.verified_by && c.passed) {
                missing.push(format!("{} (needs `{}`)", e.name, e.verified_by));
            }
        }
        if !missing.is_empty() {
            self.check("results are certified", false, missing.join(", "));
        }
        if self.ledger.is_empty() {
            self.check("ledger is non-empty", false, "no check was run");
        }
    }

    pub fn passed(&self) -> bool {
        !self.ledger.is_empty() && self.ledger.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        out.push_str(&format!("inputs sha256: {}\n", self.inputs_sha256));
        if !self.results.is_empty() {
            out.push_str("results:\n");
            for e in &self.results {
                let v = match &e.value {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                out.push_str(&format!("  {} = {}  [{}]\n", e.name, v, e.verified_by));
            }
        }
        out.push_str("checks:\n");
        for c in &self.ledger {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.ledger.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} checks, {failed} failed\n", self.ledger.len()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unverified_results_fail_the_report() {
        let mut r = RunReport::new(vec!["x".into()], String::new());
        r.check("a", true, "");
        r.result("value", 3, "a");
        r.result("other", 4, "b");
        r.seal();
        assert!(!r.passed());
        assert!(r.ledger.last().unwrap().detail.contains("other"));
    }

    #[test]
    fn empty_ledger_fails() {
        let mut r = RunReport::new(Vec::new(), String::new());
        r.seal();
        assert!(!r.passed());
    }

    #[test]
    fn digest_separates_boundaries() {
        let a = digest_inputs(&["ab".into(), "c".into()], []);
        let b = digest_inputs(&["a".into(), "bc".into()], []);
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }
}
