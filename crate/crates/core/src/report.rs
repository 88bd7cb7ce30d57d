//! Claim-check bookkeeping shared by the verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One failed check with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub claim: String,
    pub detail: String,
}

/// Per-claim check counts plus every violation found.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub checks: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
}

impl ClaimReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one evaluation of `claim`; `detail` is only built on failure.
    pub fn check(&mut self, claim: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(claim.to_string()).or_insert(0) += 1;
        if !ok {
            self.violations.push(Violation {
                claim: claim.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, claim: &str) -> u64 {
        self.checks.get(claim).copied().unwrap_or(0)
    }

    pub fn violations_of<'a>(&'a self, claim: &'a str) -> impl Iterator<Item = &'a Violation> {
        self.violations.iter().filter(move |v| v.claim == claim)
    }

    pub fn merge(&mut self, other: ClaimReport) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_insert(0) += v;
        }
        self.violations.extend(other.violations);
    }
}
