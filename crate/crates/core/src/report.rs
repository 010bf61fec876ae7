//! Structured check reports shared by the CLI and the verification drivers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckItem>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckItem { name: name.into(), pass, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("[{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("[{mark}] {} — {}\n", c.name, c.detail));
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        match self.first_failure() {
            None => out.push_str(&format!(
                "{}: ALL CHECKS PASSED ({passed}/{} passed)\n",
                self.command,
                self.checks.len()
            )),
            Some(first) => out.push_str(&format!(
                "{}: FAILURES PRESENT ({passed}/{} passed; first failure: {})\n",
                self.command,
                self.checks.len(),
                first.name
            )),
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation")
    }
}
