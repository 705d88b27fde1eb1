//! Structured check reports with deterministic ordering.

use std::fmt;

/// Outcome of a single named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Present exactly when the check failed; describes a concrete witness.
    pub witness: Option<String>,
}

/// An ordered list of checks. Checks appear in the order they were run,
/// which is deterministic for every producer in this crate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Free-form diagnostic notes that are not pass/fail checks.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, witness: impl Into<String>) {
        if passed {
            self.pass(name);
        } else {
            self.fail(name, witness);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends another report's checks and notes, prefixing check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut check in other.checks {
            check.name = format!("{prefix}.{}", check.name);
            self.checks.push(check);
        }
        for note in other.notes {
            self.notes.push(format!("{prefix}: {note}"));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match &check.witness {
                None => writeln!(f, "PASS {}", check.name)?,
                Some(w) => writeln!(f, "FAIL {} [{w}]", check.name)?,
            }
        }
        for note in &self.notes {
            writeln!(f, "NOTE {note}")?;
        }
        write!(
            f,
            "{}",
            if self.all_passed() { "summary: pass" } else { "summary: fail" }
        )
    }
}
