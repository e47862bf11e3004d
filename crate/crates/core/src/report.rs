//! Pass/fail bookkeeping shared by the verifiers.

use serde::Serialize;

/// Result of one individual check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Preconditions did not hold; the instance says nothing either way.
    Skip,
    /// The check could not be completed within budget. Never counted as a pass.
    Unverified,
}

/// Aggregated outcome of a verifier. Keeps counts plus the first few
/// counterexamples and unverified instances verbatim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub unverified: u64,
    pub failures: Vec<String>,
    pub unverified_cases: Vec<String>,
    pub notes: Vec<String>,
}

const KEEP: usize = 20;

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, outcome: Outcome, describe: impl FnOnce() -> String) {
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail => {
                self.failed += 1;
                if self.failures.len() < KEEP {
                    self.failures.push(describe());
                }
            }
            Outcome::Unverified => {
                self.unverified += 1;
                if self.unverified_cases.len() < KEEP {
                    self.unverified_cases.push(describe());
                }
            }
        }
    }

    /// Records a pass when `ok`, a failure otherwise.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.record(if ok { Outcome::Pass } else { Outcome::Fail }, describe);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's counts into this one, prefixing its messages.
    pub fn absorb(&mut self, other: Report) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        self.unverified += other.unverified;
        let tag = other.name;
        for f in other.failures {
            if self.failures.len() < KEEP {
                self.failures.push(format!("{tag}: {f}"));
            }
        }
        for u in other.unverified_cases {
            if self.unverified_cases.len() < KEEP {
                self.unverified_cases.push(format!("{tag}: {u}"));
            }
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{tag}: {n}")));
    }

    /// No failures. Unverified instances do not make a report fail, but are
    /// never counted as passes either.
    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}
