//! Pass/fail reports produced by the axiom checkers.

use std::fmt;

/// One violated identity, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    /// Which law failed, e.g. `"gamma-associativity (nested)"`.
    pub law: String,
    /// The profile (or profiles) at which it failed.
    pub profile: String,
    /// Witness elements, rendered.
    pub witness: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.law, self.profile, self.witness)
    }
}

/// Result of a checker run: a list of findings plus truncation notices.
///
/// Findings are kept sorted so that reports are deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub findings: Vec<Finding>,
    pub truncations: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn fail(&mut self, law: impl Into<String>, profile: impl Into<String>, witness: impl Into<String>) {
        self.findings.push(Finding {
            law: law.into(),
            profile: profile.into(),
            witness: witness.into(),
        });
    }

    pub fn truncated(&mut self, notice: impl Into<String>) {
        let notice = notice.into();
        if !self.truncations.contains(&notice) {
            self.truncations.push(notice);
        }
    }

    /// Merge another report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.findings.extend(other.findings);
        for t in other.truncations {
            self.truncated(t);
        }
    }

    /// Sort findings; call once after all checks ran.
    pub fn finish(mut self) -> Self {
        self.findings.sort();
        self.findings.dedup();
        self.truncations.sort();
        self.truncations.dedup();
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "PASS")?;
        } else {
            writeln!(f, "FAIL ({} findings)", self.findings.len())?;
            for finding in &self.findings {
                writeln!(f, "  {finding}")?;
            }
        }
        for t in &self.truncations {
            writeln!(f, "  truncation: {t}")?;
        }
        Ok(())
    }
}
