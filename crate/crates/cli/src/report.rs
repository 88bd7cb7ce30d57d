//! Suite reports.

use limitlab::report::ClaimReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the canonical JSON of a scenario input.
pub fn digest_of<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("inputs serialize");
    hex::encode(Sha256::digest(bytes))
}

/// Outcome of one claim on one scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim: String,
    pub scenario: String,
    pub pass: bool,
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// One record per claim id in `report`, with the first violation as the
/// counterexample.
pub fn records_from(report: &ClaimReport, scenario: &str) -> Vec<CheckRecord> {
    report
        .checks
        .iter()
        .map(|(claim, &checks)| {
            let first = report.violations_of(claim).next();
            CheckRecord {
                claim: claim.clone(),
                scenario: scenario.to_string(),
                pass: first.is_none(),
                checks,
                counterexample: first.map(|v| v.detail.clone()),
                timing_ms: None,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub max_points: usize,
    pub subset_cap: usize,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// Sorts records by scenario digest and claim, then fills the summary.
    pub fn finish(mut self) -> Self {
        self.records
            .sort_by(|a, b| (&a.scenario, &a.claim).cmp(&(&b.scenario, &b.claim)));
        let passed = self.records.iter().filter(|r| r.pass).count();
        self.summary = Summary {
            records: self.records.len(),
            passed,
            failed: self.records.len() - passed,
            checks: self.records.iter().map(|r| r.checks).sum(),
        };
        self
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
