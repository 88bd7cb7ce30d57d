use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use limitlab::approx::TranslationTable;
use limitlab::boundtest::{build_tin, stair_indices, union_yin, verify_bound_claims, SortedPrefix};
use limitlab::limittest::{build_mq, verify_limit_claims, GammaDelta, DEFAULT_SUBSET_CAP};
use limitlab::measure::{test_measure, union_measure};
use limitlab::scenario::Scenario;
use limitlab::uniqueness::{
    coverage_check, enumerate_d, greedy_select, verify_selection, PairedTables,
};
use limitlab::Rational;
use limitlab_cli::generate::generate_scenario;
use limitlab_cli::ratio::emit_ratio_csv;
use limitlab_cli::{run_suite, CliError, Suite, SuiteConfig};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "limitlab",
    version,
    about = "Exact checks of finite interval-test constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the slope-threshold test T_i^n of a scenario's table.
    BuildTin {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the index-stair construction M(Q) on a subset of the table keys.
    BuildMq {
        #[arg(long)]
        scenario: PathBuf,
        /// Overrides the scenario's c.
        #[arg(long)]
        c: Option<Rational>,
        /// Overrides the scenario's d.
        #[arg(long)]
        d: Option<Rational>,
        /// Comma-separated keys; all keys when omitted.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a verification suite over seeded scenarios and the fixtures.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Include generated scenarios (always on; kept for explicitness).
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        cases: usize,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[arg(long)]
        skip_fixtures: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Write the exact and decimal ratio sequence of a scenario as CSV.
    Ratio {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Greedy disjoint selection over two tables and the coverage check.
    Uniqueness {
        /// Supplies alphahat, betahat, c and d.
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        f_table: PathBuf,
        #[arg(long)]
        g_table: PathBuf,
        #[arg(long)]
        p: Rational,
        #[command(flatten)]
        out: OutArg,
    },
    /// Emit a generated scenario.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    Ok(Scenario::from_json(&read(path)?)?)
}

fn load_table(path: &Path) -> Result<TranslationTable, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| limitlab::Error::Parse(format!("{}: {e}", path.display())).into())
}

fn emit(out: &OutArg, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::io("<stdout>", e))
                }
                _ => Ok(()),
            }
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn parse_subset(list: &str) -> Result<Vec<Rational>, CliError> {
    let mut keys = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<limitlab::Result<Vec<Rational>>>()?;
    keys.sort();
    keys.dedup();
    Ok(keys)
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::BuildTin {
            scenario,
            i,
            n,
            out,
        } => {
            let sc = load_scenario(&scenario)?;
            let prefix = SortedPrefix::new(&sc.g, n)?;
            let union = union_yin(&prefix, i);
            let claims = verify_bound_claims(&sc.g, i, n)?;
            let value = json!({
                "i": i,
                "n": n,
                "test": build_tin(&prefix, i),
                "union": union,
                "union_measure": union_measure(&union),
                "stair": stair_indices(&prefix, i),
                "claims": claims,
            });
            emit(&out, &pretty(&value))?;
            Ok(claims.pass())
        }
        Command::BuildMq {
            scenario,
            c,
            d,
            subset,
            subset_cap,
            out,
        } => {
            let sc = load_scenario(&scenario)?;
            let gd = GammaDelta::new(sc.g.clone(), c.unwrap_or(sc.c), d.unwrap_or(sc.d))?;
            let keys = match subset {
                Some(list) => parse_subset(&list)?,
                None => sc.g.keys().cloned().collect(),
            };
            let (test, trace) = build_mq(&gd, &keys)?;
            let claims = verify_limit_claims(&gd, &keys, Some(subset_cap))?;
            let value = json!({
                "test": test,
                "measure": test_measure(&test),
                "trace": trace,
                "claims": claims,
            });
            emit(&out, &pretty(&value))?;
            Ok(claims.pass())
        }
        Command::Check {
            suite,
            random: _,
            seed,
            cases,
            max_points,
            subset_cap,
            skip_fixtures,
            out,
        } => {
            let config = SuiteConfig {
                suite,
                seed,
                cases,
                max_points,
                subset_cap,
                skip_fixtures,
            };
            let report = run_suite(&config)?;
            emit(&out, &report.to_json())?;
            Ok(report.pass())
        }
        Command::Ratio { scenario, out } => {
            emit_ratio_csv(&load_scenario(&scenario)?, &out)?;
            Ok(true)
        }
        Command::Uniqueness {
            scenario,
            f_table,
            g_table,
            p,
            out,
        } => {
            let sc = load_scenario(&scenario)?;
            let pt = PairedTables::new(load_table(&f_table)?, load_table(&g_table)?, sc.c, sc.d)?;
            let d = enumerate_d(&pt);
            let selection = greedy_select(&d);
            let claims = verify_selection(&selection);
            let coverage = coverage_check(&pt, &selection, &sc.alpha, &sc.beta, &p);
            let covered = matches!(&coverage, Ok(c) if c.pass());
            let value = json!({
                "d": d,
                "selection": selection,
                "claims": claims,
                "coverage": coverage.as_ref().ok(),
                "coverage_error": coverage.as_ref().err().map(ToString::to_string),
            });
            emit(&out, &pretty(&value))?;
            Ok(claims.pass() && covered)
        }
        Command::Gen {
            seed,
            max_points,
            out,
        } => {
            emit(&out, &generate_scenario(seed, max_points).to_json())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
