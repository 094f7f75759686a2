use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

/// Longest rendering kept for a single side of an assertion.
const MAX_RENDER: usize = 600;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub instance: String,
    pub kmax: usize,
    pub samples: usize,
    pub records: Vec<Record>,
    /// Verified constants and other findings, keyed by name.
    pub constants: BTreeMap<String, String>,
    pub summary: Summary,
}

fn clip(s: String) -> String {
    if s.chars().count() <= MAX_RENDER {
        s
    } else {
        let head: String = s.chars().take(MAX_RENDER).collect();
        format!("{head} …")
    }
}

impl Report {
    pub fn push(&mut self, suite: &str, case: impl Into<String>, lhs: impl Display, rhs: impl Display, pass: bool) {
        self.records.push(Record {
            suite: suite.to_string(),
            case: case.into(),
            lhs: clip(lhs.to_string()),
            rhs: clip(rhs.to_string()),
            pass,
        });
    }

    /// Records `lhs == rhs`.
    pub fn check<T: PartialEq + Display>(&mut self, suite: &str, case: impl Into<String>, lhs: &T, rhs: &T) -> bool {
        let pass = lhs == rhs;
        self.push(suite, case, lhs, rhs, pass);
        pass
    }

    pub fn constant(&mut self, key: impl Into<String>, value: impl Display) {
        self.constants.insert(key.into(), value.to_string());
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        self.constants.extend(other.constants);
    }

    pub fn finish(&mut self) {
        let passed = self.records.iter().filter(|r| r.pass).count();
        self.summary = Summary {
            total: self.records.len(),
            passed,
            failed: self.records.len() - passed,
        };
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn suite_passed(&self, suite: &str) -> bool {
        self.records.iter().filter(|r| r.suite == suite).all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
