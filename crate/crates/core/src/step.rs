//! Integer-valued step functions with rational breakpoints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A function on `[breakpoints[0], breakpoints[last]]` that is constant on
/// every open segment between consecutive breakpoints and may take an
/// arbitrary value at each breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    segment_values: Vec<u64>,
    point_values: Vec<u64>,
}

impl StepFunction {
    pub fn new(
        breakpoints: Vec<Rational>,
        segment_values: Vec<u64>,
        point_values: Vec<u64>,
    ) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::Domain("step function needs a breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if segment_values.len() + 1 != breakpoints.len() || point_values.len() != breakpoints.len()
        {
            return Err(Error::LengthMismatch {
                left: breakpoints.len(),
                right: segment_values.len() + 1,
            });
        }
        Ok(StepFunction {
            breakpoints,
            segment_values,
            point_values,
        })
    }

    /// The zero function on `[lo, hi]`.
    pub fn zero(lo: Rational, hi: Rational) -> Self {
        if lo == hi {
            return StepFunction {
                breakpoints: vec![lo],
                segment_values: vec![],
                point_values: vec![0],
            };
        }
        StepFunction {
            breakpoints: vec![lo, hi],
            segment_values: vec![0],
            point_values: vec![0, 0],
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn segment_values(&self) -> &[u64] {
        &self.segment_values
    }

    pub fn point_values(&self) -> &[u64] {
        &self.point_values
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (
            &self.breakpoints[0],
            self.breakpoints.last().expect("nonempty"),
        )
    }

    /// Exact evaluation; `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<u64> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        match self.breakpoints.binary_search(x) {
            Ok(i) => Some(self.point_values[i]),
            // x lies strictly between breakpoints[i - 1] and breakpoints[i]
            Err(i) => Some(self.segment_values[i - 1]),
        }
    }

    /// `∫ f` over the domain; point values carry no mass.
    pub fn integral(&self) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(&self.segment_values)
            .filter(|(_, v)| **v != 0)
            .map(|(w, v)| (&w[1] - &w[0]) * Rational::integer(*v as i64))
            .sum()
    }

    /// Midpoints of consecutive breakpoints, one per open segment.
    pub fn segment_midpoints(&self) -> Vec<Rational> {
        self.breakpoints
            .windows(2)
            .map(|w| w[0].midpoint(&w[1]))
            .collect()
    }

    pub fn max_value(&self) -> u64 {
        self.segment_values
            .iter()
            .chain(&self.point_values)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn eval_segments_and_points() {
        let f =
            StepFunction::new(vec![r(0, 1), r(1, 2), r(1, 1)], vec![1, 3], vec![0, 7, 2]).unwrap();
        assert_eq!(f.eval(&r(1, 4)), Some(1));
        assert_eq!(f.eval(&r(1, 2)), Some(7));
        assert_eq!(f.eval(&r(3, 4)), Some(3));
        assert_eq!(f.eval(&r(1, 1)), Some(2));
        assert_eq!(f.eval(&r(3, 2)), None);
        assert_eq!(f.integral(), r(2, 1));
        assert_eq!(f.max_value(), 7);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(StepFunction::new(vec![r(1, 2), r(1, 2)], vec![0], vec![0, 0]).is_err());
        assert!(StepFunction::new(vec![r(0, 1), r(1, 1)], vec![], vec![0, 0]).is_err());
        assert!(StepFunction::new(vec![], vec![], vec![]).is_err());
    }
}
