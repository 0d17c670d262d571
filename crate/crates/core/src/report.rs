//! Structured pass/fail reports shared by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub q: u64,
    pub pass: bool,
    pub details: Vec<Value>,
}

impl Report {
    pub fn new(check: &str, q: u64) -> Self {
        Self {
            check: check.to_string(),
            q,
            pass: true,
            details: Vec::new(),
        }
    }

    /// Records an informational detail.
    pub fn note(&mut self, detail: Value) {
        self.details.push(detail);
    }

    /// Records a failure.
    pub fn fail(&mut self, detail: Value) {
        self.pass = false;
        self.details.push(detail);
    }

    /// Records `detail` as a failure unless `ok`.
    pub fn expect(&mut self, ok: bool, detail: Value) {
        if ok {
            self.note(detail);
        } else {
            self.fail(detail);
        }
    }

    /// First detail recorded as a failure, if any, in insertion order.
    pub fn first_failure(&self) -> Option<&Value> {
        self.details.iter().find(|d| d.get("ok") == Some(&Value::Bool(false)))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        // q = 0 marks a check that does not depend on q
        if self.q == 0 {
            write!(f, "{}: {verdict}", self.check)
        } else {
            write!(f, "{} q={}: {verdict}", self.check, self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_tracking() {
        let mut r = Report::new("census", 3);
        r.expect(true, json!({"ok": true}));
        assert!(r.pass);
        r.expect(false, json!({"ok": false, "what": "x"}));
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap()["what"], "x");
        assert_eq!(r.to_string(), "census q=3: FAIL");
        let js = r.to_json();
        assert_eq!(js["check"], "census");
        assert_eq!(js["details"].as_array().unwrap().len(), 2);
        assert_eq!(Report::new("s4-fixture", 0).to_string(), "s4-fixture: PASS");
    }
}
