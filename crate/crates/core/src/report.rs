//! Structured pass/fail records for identity checks.

use std::fmt;

use serde::Serialize;

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity as a formula, so a reader can match it to the literature.
    pub citation: String,
    pub passed: bool,
    /// A concrete witness for a failure: a matrix position or a parameter tuple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.name, self.citation)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// A list of checks, optionally streamed to an observer as they are recorded.
#[derive(Default, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip)]
    observer: Option<Box<dyn Fn(&Check) + Send + Sync>>,
}

impl fmt::Debug for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VerificationReport")
            .field("title", &self.title)
            .field("checks", &self.checks)
            .finish()
    }
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    /// Calls `f` on every check as it is recorded.
    pub fn with_observer(mut self, f: impl Fn(&Check) + Send + Sync + 'static) -> Self {
        self.observer = Some(Box::new(f));
        self
    }

    pub fn push(&mut self, check: Check) {
        if let Some(f) = &self.observer {
            f(&check);
        }
        self.checks.push(check);
    }

    /// Records `outcome`, where `Err` carries the witness.
    pub fn record(&mut self, name: impl Into<String>, citation: impl Into<String>, outcome: Result<(), String>) {
        let (passed, witness) = match outcome {
            Ok(()) => (true, None),
            Err(w) => (false, Some(w)),
        };
        self.push(Check {
            name: name.into(),
            citation: citation.into(),
            passed,
            witness,
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::{Arc, Mutex};

    #[test]
    fn records_and_streams() {
        let seen = Arc::new(Mutex::new(Vec::new()));
        let sink = seen.clone();
        let mut r = VerificationReport::new("t").with_observer(move |c| sink.lock().unwrap().push(c.passed));
        r.record("a", "x = x", Ok(()));
        r.record("b", "x = y", Err("(0, 1)".into()));
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(*seen.lock().unwrap(), vec![true, false]);
        let j = r.to_json();
        assert_eq!(j["checks"][1]["witness"], "(0, 1)");
        assert!(j["checks"][0].get("witness").is_none());
    }
}
