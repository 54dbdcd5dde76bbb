//! Structured pass/fail evidence shared by every verifier.

use serde::{Deserialize, Serialize};

/// One named check: what was examined, how many cases, and the outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Number of cases the check ranged over.
    pub universe: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, universe: u64, passed: bool) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            universe,
            passed,
            detail: String::new(),
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// Record a check whose failure carries a first counterexample.
    pub fn record_with(
        &mut self,
        name: impl Into<String>,
        universe: u64,
        failure: Option<String>,
    ) {
        let passed = failure.is_none();
        self.record(name, universe, passed).detail = failure.unwrap_or_default();
    }

    pub fn note(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.record(name, 0, true).detail = detail.into();
    }

    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {} ({} cases)",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.universe
            )?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
