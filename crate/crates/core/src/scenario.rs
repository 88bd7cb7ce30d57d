//! Bundled experiment inputs.

use serde::{Deserialize, Serialize};

use crate::approx::{LeftCeApproximation, TranslationTable};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Rational stand-ins for `α` and `β`, approximations of both, a translation
/// table and the constants `c < d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub alpha: Rational,
    pub beta: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub g: TranslationTable,
    pub c: Rational,
    pub d: Rational,
}

impl Scenario {
    /// Checks the unit-interval convention, the approximations, and
    /// `0 ≤ c < d`.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidScenario(what));
        if !self.alpha.in_unit_half_open() || !self.beta.in_unit_half_open() {
            return bad(format!(
                "alpha {} and beta {} must lie in [0, 1)",
                self.alpha, self.beta
            ));
        }
        self.approx_a()
            .map_err(|e| Error::InvalidScenario(format!("a: {e}")))?;
        self.approx_b()
            .map_err(|e| Error::InvalidScenario(format!("b: {e}")))?;
        self.g
            .validate_range()
            .map_err(|e| Error::InvalidScenario(format!("g: {e}")))?;
        if self.c.is_negative() || self.c >= self.d {
            return bad(format!(
                "need 0 <= c < d, got c = {}, d = {}",
                self.c, self.d
            ));
        }
        Ok(())
    }

    /// Additionally requires `d − c < 1`, as the limit-test construction does.
    pub fn validate_for_limit(&self) -> Result<()> {
        self.validate()?;
        if &self.d - &self.c >= Rational::one() {
            return Err(Error::InvalidScenario(format!(
                "need d - c < 1, got {}",
                &self.d - &self.c
            )));
        }
        Ok(())
    }

    /// Additionally requires every key of `g` to lie below `β`.
    pub fn validate_as_translation(&self) -> Result<()> {
        self.validate()?;
        if let Some(q) = self.g.keys().find(|q| *q >= &self.beta) {
            return Err(Error::InvalidScenario(format!(
                "key {q} is not below beta {}",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn approx_a(&self) -> Result<LeftCeApproximation> {
        LeftCeApproximation::new(self.a.clone(), self.alpha.clone())
    }

    pub fn approx_b(&self) -> Result<LeftCeApproximation> {
        LeftCeApproximation::new(self.b.clone(), self.beta.clone())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let sc: Scenario =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("scenario JSON: {e}")))?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn sample() -> Scenario {
        Scenario {
            alpha: r(1, 2),
            beta: r(3, 4),
            a: vec![r(0, 1), r(1, 4)],
            b: vec![r(0, 1), r(1, 2)],
            g: TranslationTable::from_pairs(vec![(r(0, 1), r(0, 1)), (r(1, 4), r(1, 2))])
                .unwrap()
                .into_monotone()
                .unwrap(),
            c: r(1, 2),
            d: r(1, 1),
        }
    }

    #[test]
    fn round_trip_and_validation() {
        let sc = sample();
        sc.validate_for_limit().unwrap();
        sc.validate_as_translation().unwrap();
        let back = Scenario::from_json(&sc.to_json()).unwrap();
        assert_eq!(back, sc);
    }

    #[test]
    fn rejects_bad_constants() {
        let mut sc = sample();
        sc.d = r(1, 4);
        assert!(sc.validate().is_err());
        let mut sc = sample();
        sc.c = r(0, 1);
        sc.d = r(1, 1);
        assert!(sc.validate().is_ok());
        assert!(sc.validate_for_limit().is_err());
        let mut sc = sample();
        sc.g = TranslationTable::from_pairs(vec![(r(0, 1), r(0, 1)), (r(3, 4), r(1, 2))]).unwrap();
        assert!(sc.validate().is_ok());
        assert!(sc.validate_as_translation().is_err());
        assert!(Scenario::from_json("{\"alpha\":\"1/0\"}").is_err());
    }
}
