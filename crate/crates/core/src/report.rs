//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ring::{CycloElem, RingMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub subject: String,
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, subject: impl Into<String>, pass: bool, witness: Value) -> Self {
        Check {
            id: id.into(),
            subject: subject.into(),
            pass,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Report {
            command: command.into(),
            params,
            checks,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Rows of coefficient vectors, each entry as `"numerator/p^e"` strings.
pub fn matrix_json(m: &RingMatrix<CycloElem>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| serde_json::json!(x.to_report_strings())).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn counts_and_schema() {
        let r = Report::new(
            "verify gauss",
            json!({"p": 3}),
            vec![
                Check::new("a", "x", true, Value::Null),
                Check::new("b", "y", false, json!("0")),
            ],
        );
        assert_eq!((r.passed, r.failed), (1, 1));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][1]["pass"], json!(false));
        assert_eq!(v["command"], json!("verify gauss"));
    }
}
