//! Scenario generation, verification suites, fixtures and report output for
//! the `limitlab` command-line tool.

pub mod error;
pub mod fixtures;
pub mod generate;
pub mod ratio;
pub mod report;
pub mod suite;

pub use error::CliError;
pub use report::Report;
pub use suite::{run_suite, Suite, SuiteConfig};
