//! CSV export of the ratio sequence of a scenario.

use std::io::Write;

use limitlab::approx::ratio_sequence;
use limitlab::scenario::Scenario;

use crate::error::CliError;

/// Decimal places of the approximate ratio column.
pub const DECIMAL_PLACES: usize = 12;

/// Writes `q,ratio,ratio_decimal` rows for the enumerated keys below `β`,
/// sorted ascending by `q`.
pub fn write_ratio_csv<W: Write>(scenario: &Scenario, out: W) -> Result<(), CliError> {
    let mut keys: Vec<_> = scenario
        .g
        .enumeration()
        .iter()
        .filter(|q| *q < &scenario.beta)
        .cloned()
        .collect();
    keys.sort();
    let rows = ratio_sequence(&scenario.g, &scenario.alpha, &scenario.beta, &keys)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "ratio", "ratio_decimal"])?;
    for (q, ratio) in rows {
        w.write_record([
            q.to_string(),
            ratio.to_string(),
            ratio.to_decimal(DECIMAL_PLACES),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(())
}

pub fn emit_ratio_csv(scenario: &Scenario, out: &std::path::Path) -> Result<(), CliError> {
    let file = std::fs::File::create(out).map_err(|e| CliError::io(out, e))?;
    write_ratio_csv(scenario, file)
}
