//! Seeded verification suites over generated scenarios and fixtures.

use clap::ValueEnum;
use limitlab::approx::verify_approx_claims;
use limitlab::boundtest::verify_bound_claims;
use limitlab::limittest::{
    alternating_scenario, verify_alternating, verify_limit_claims, GammaDelta,
};
use limitlab::report::ClaimReport;
use limitlab::uniqueness::{coverage_check, enumerate_d, greedy_select, verify_selection};
use limitlab::Result as CoreResult;
use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::fixtures::run_fixtures;
use crate::generate::{
    alternating_pool, engineered_coverage, generate_paired, generate_scenario, rng_for,
};
use crate::report::{digest_of, records_from, CheckRecord, Report, Summary};

/// Largest sharpness index checked by the bound suite.
pub const BOUND_I_MAX: u32 = 4;
/// Depth of the nonmonotone construction in the approx suite.
pub const NONMONOTONE_DEPTH: u32 = 6;
/// Largest accepted subset cap.
pub const MAX_SUBSET_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bound,
    Limit,
    Uniqueness,
    Approx,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Bound => "bound",
            Suite::Limit => "limit",
            Suite::Uniqueness => "uniqueness",
            Suite::Approx => "approx",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub max_points: usize,
    pub subset_cap: usize,
    /// Skip the built-in fixtures.
    pub skip_fixtures: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            seed: 0,
            cases: 10,
            max_points: 8,
            subset_cap: limitlab::limittest::DEFAULT_SUBSET_CAP,
            skip_fixtures: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cases == 0 {
            return Err(CliError::Config("cases must be at least 1".into()));
        }
        if self.max_points == 0 {
            return Err(CliError::Config("max-points must be at least 1".into()));
        }
        if self.subset_cap > MAX_SUBSET_CAP {
            return Err(CliError::Config(format!(
                "subset-cap {} exceeds {MAX_SUBSET_CAP}",
                self.subset_cap
            )));
        }
        Ok(())
    }
}

/// Per-case seeds drawn from the suite seed.
pub fn case_seeds(seed: u64, cases: usize) -> Vec<u64> {
    let mut rng = rng_for(seed);
    (0..cases).map(|_| rng.next_u64()).collect()
}

/// Thread count from `LIMITLAB_THREADS`, if set to a positive integer.
pub fn thread_limit() -> Option<usize> {
    std::env::var("LIMITLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

fn records_or_error(
    result: CoreResult<ClaimReport>,
    claim: &str,
    digest: &str,
) -> Vec<CheckRecord> {
    match result {
        Ok(rep) => records_from(&rep, digest),
        Err(e) => {
            let mut rep = ClaimReport::new();
            rep.check(claim, false, || format!("error: {e}"));
            records_from(&rep, digest)
        }
    }
}

fn bound_case(seed: u64, config: &SuiteConfig) -> Vec<CheckRecord> {
    let sc = generate_scenario(seed, config.max_points);
    let digest = digest_of(&sc);
    records_or_error(
        verify_bound_claims(&sc.g, BOUND_I_MAX, config.max_points - 1),
        "bound.error",
        &digest,
    )
}

fn limit_case(seed: u64, config: &SuiteConfig) -> Vec<CheckRecord> {
    let sc = generate_scenario(seed, config.max_points);
    let digest = digest_of(&sc);
    let result = GammaDelta::new(sc.g.clone(), sc.c.clone(), sc.d.clone()).and_then(|gd| {
        let keys: Vec<_> = sc.g.keys().cloned().collect();
        verify_limit_claims(&gd, &keys, Some(config.subset_cap))
    });
    let mut out = records_or_error(result, "limit.error", &digest);

    let k = 1 + (seed % 5) as usize;
    let input = alternating_pool(k, (seed % 4) as usize, seed);
    let digest = digest_of(&(input.gd.base(), k));
    let result = alternating_scenario(&input.gd, &input.alphahat, &input.betahat, &input.pool, k)
        .and_then(|h| {
            let mut rep = ClaimReport::new();
            rep.check("alternating.found", h.is_some(), || {
                format!("no selection for k = {k}")
            });
            if let Some(h) = h {
                rep.merge(verify_alternating(&input.gd, &input.betahat, &h)?);
            }
            Ok(rep)
        });
    out.extend(records_or_error(result, "alternating.error", &digest));
    out
}

fn approx_case(seed: u64, config: &SuiteConfig) -> Vec<CheckRecord> {
    let sc = generate_scenario(seed, config.max_points);
    let digest = digest_of(&sc);
    let result = sc
        .approx_a()
        .and_then(|a| Ok((a, sc.approx_b()?)))
        .and_then(|(a, b)| verify_approx_claims(&a, &b, &sc.c, NONMONOTONE_DEPTH));
    records_or_error(result, "approx.error", &digest)
}

fn uniqueness_case(seed: u64, config: &SuiteConfig) -> Vec<CheckRecord> {
    let pt = generate_paired(seed, config.max_points);
    let digest = digest_of(&(pt.f(), pt.g(), pt.c(), pt.d()));
    let mut out = records_from(
        &verify_selection(&greedy_select(&enumerate_d(&pt))),
        &digest,
    );

    let input = engineered_coverage(seed, config.max_points);
    let pt = &input.tables;
    let digest = digest_of(&(pt.f(), pt.g(), pt.c(), pt.d(), &input.p));
    let sel = greedy_select(&enumerate_d(pt));
    let result = coverage_check(pt, &sel, &input.alphahat, &input.betahat, &input.p).map(|cov| {
        let mut rep = ClaimReport::new();
        rep.check(
            "uniqueness.coverage",
            cov.pass() && !cov.checked.is_empty(),
            || format!("e*betahat = {} missed at {:?}", cov.point, cov.failures),
        );
        rep
    });
    out.extend(records_or_error(result, "uniqueness.coverage", &digest));
    out
}

fn run_case(seed: u64, config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if config.suite.includes(Suite::Bound) {
        out.extend(bound_case(seed, config));
    }
    if config.suite.includes(Suite::Limit) {
        out.extend(limit_case(seed, config));
    }
    if config.suite.includes(Suite::Approx) {
        out.extend(approx_case(seed, config));
    }
    if config.suite.includes(Suite::Uniqueness) {
        out.extend(uniqueness_case(seed, config));
    }
    out
}

/// Runs the selected verifiers over `cases` generated scenarios plus the
/// fixtures. Check failures are report content; only configuration and
/// thread-pool problems are errors.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, CliError> {
    config.validate()?;
    let seeds = case_seeds(config.seed, config.cases);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_limit() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let mut records: Vec<CheckRecord> = pool.install(|| {
        seeds
            .par_iter()
            .flat_map_iter(|&s| run_case(s, config))
            .collect()
    });
    if !config.skip_fixtures {
        records.extend(run_fixtures(config.subset_cap));
    }
    Ok(Report {
        suite: config.suite.name().to_string(),
        seed: config.seed,
        cases: config.cases,
        max_points: config.max_points,
        subset_cap: config.subset_cap,
        records,
        summary: Summary::default(),
    }
    .finish())
}
