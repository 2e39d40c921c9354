//! Check reports: a subject, a verdict, violations in the order the checks
//! enumerate them, counters and free-form detail lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

/// One violation. `key` is its position in the canonical enumeration order
/// of the check that found it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub key: usize,
    pub kind: String,
    pub message: String,
}

impl Violation {
    pub fn new(kind: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            key: 0,
            kind: kind.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub statistics: BTreeMap<String, u64>,
    pub details: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            verdict: Verdict::Pass,
            violations: Vec::new(),
            statistics: BTreeMap::new(),
            details: Vec::new(),
        }
    }

    pub fn error(subject: impl Into<String>, err: &CliError) -> Self {
        let mut r = Report::new(subject);
        r.verdict = Verdict::Error;
        r.details.push(format!("error: {err}"));
        r
    }

    pub fn stat(&mut self, key: &str, value: usize) {
        self.statistics.insert(key.to_string(), value as u64);
    }

    pub fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    pub fn violation(&mut self, kind: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation::new(kind, message));
    }

    /// Numbers the violations and sets the verdict from them.
    pub fn finish(mut self) -> Self {
        for (i, v) in self.violations.iter_mut().enumerate() {
            v.key = i;
        }
        if self.verdict != Verdict::Error {
            self.verdict = if self.violations.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "subject: {}", self.subject).unwrap();
        writeln!(s, "verdict: {}", self.verdict.as_str()).unwrap();
        if !self.statistics.is_empty() {
            writeln!(s, "statistics:").unwrap();
            for (k, v) in &self.statistics {
                writeln!(s, "  {k}: {v}").unwrap();
            }
        }
        if !self.details.is_empty() {
            writeln!(s, "details:").unwrap();
            for d in &self.details {
                writeln!(s, "  {d}").unwrap();
            }
        }
        writeln!(s, "violations: {}", self.violations.len()).unwrap();
        for v in &self.violations {
            writeln!(s, "  [{}] {}: {}", v.key, v.kind, v.message).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
