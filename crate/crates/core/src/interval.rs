//! Rational intervals and finite tests.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalKind {
    /// `[lo, hi]`
    Closed,
    /// `(lo, hi]`
    HalfOpenLeft,
}

/// An interval with rational endpoints.
///
/// `lo > hi` is the canonical empty interval for either kind; a half-open
/// interval is also empty when `lo == hi`. A closed interval with `lo == hi`
/// is the nonempty point interval `[q, q]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub kind: IntervalKind,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            hi,
            kind: IntervalKind::Closed,
        }
    }

    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            hi,
            kind: IntervalKind::HalfOpenLeft,
        }
    }

    pub fn point(q: Rational) -> Self {
        Interval::closed(q.clone(), q)
    }

    /// The canonical empty interval `[1, 0]`.
    pub fn empty() -> Self {
        Interval::closed(Rational::one(), Rational::zero())
    }

    pub fn is_empty(&self) -> bool {
        match self.kind {
            IntervalKind::Closed => self.lo > self.hi,
            IntervalKind::HalfOpenLeft => self.lo >= self.hi,
        }
    }

    /// `max(hi - lo, 0)`.
    pub fn measure(&self) -> Rational {
        if self.lo >= self.hi {
            Rational::zero()
        } else {
            &self.hi - &self.lo
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above_lo = match self.kind {
            IntervalKind::Closed => &self.lo <= x,
            IntervalKind::HalfOpenLeft => &self.lo < x,
        };
        above_lo && x <= &self.hi
    }

    /// Set inclusion `self ⊆ other`; the empty set is a subset of everything.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        if self.is_empty() {
            return true;
        }
        if other.is_empty() || self.hi > other.hi {
            return false;
        }
        match (self.kind, other.kind) {
            (IntervalKind::Closed, IntervalKind::HalfOpenLeft) => other.lo < self.lo,
            _ => other.lo <= self.lo,
        }
    }

    /// Set equality, treating all empty intervals as equal.
    pub fn same_set(&self, other: &Interval) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Intersection with a closed interval `[lo, hi]`, keeping this kind.
    /// Returns the canonical empty interval when nothing remains.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        let (new_lo, kind) = match self.lo.cmp(lo) {
            Ordering::Less => (lo.clone(), IntervalKind::Closed),
            Ordering::Equal if self.kind == IntervalKind::Closed => {
                (lo.clone(), IntervalKind::Closed)
            }
            _ => (self.lo.clone(), self.kind),
        };
        let new_hi = if &self.hi > hi {
            hi.clone()
        } else {
            self.hi.clone()
        };
        let out = Interval {
            lo: new_lo,
            hi: new_hi,
            kind,
        };
        if out.is_empty() {
            Interval::empty()
        } else {
            out
        }
    }

    /// Whether the two sets share at least one point.
    pub fn intersects(&self, other: &Interval) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let lo = std::cmp::max(&self.lo, &other.lo);
        let hi = std::cmp::min(&self.hi, &other.hi);
        match lo.cmp(hi) {
            Ordering::Less => true,
            Ordering::Equal => self.contains(lo) && other.contains(lo),
            Ordering::Greater => false,
        }
    }
}

/// An ordered tuple of intervals. Duplicates and empty intervals are kept
/// because positions are meaningful to the constructions that build them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteTest {
    pub intervals: Vec<Interval>,
}

impl FiniteTest {
    pub fn new(intervals: Vec<Interval>) -> Self {
        FiniteTest { intervals }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(|iv| !iv.is_empty())
    }
}

impl FromIterator<Interval> for FiniteTest {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        FiniteTest::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn emptiness_and_measure() {
        assert!(Interval::empty().is_empty());
        assert_eq!(Interval::empty().measure(), Rational::zero());
        let pt = Interval::point(r(2, 5));
        assert!(!pt.is_empty());
        assert_eq!(pt.measure(), Rational::zero());
        assert!(Interval::half_open(r(1, 2), r(1, 2)).is_empty());
        assert_eq!(Interval::closed(r(1, 4), r(3, 8)).measure(), r(1, 8));
    }

    #[test]
    fn membership_respects_kind() {
        let c = Interval::closed(r(0, 1), r(3, 8));
        let h = Interval::half_open(r(0, 1), r(3, 8));
        assert!(c.contains(&r(0, 1)));
        assert!(!h.contains(&r(0, 1)));
        assert!(h.contains(&r(3, 8)));
        assert!(!h.contains(&r(1, 2)));
    }

    #[test]
    fn subsets() {
        let big = Interval::closed(r(0, 1), r(1, 2));
        let small = Interval::closed(r(1, 8), r(1, 4));
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert!(Interval::empty().is_subset_of(&small));
        assert!(!small.is_subset_of(&Interval::empty()));
        let h = Interval::half_open(r(0, 1), r(1, 2));
        assert!(!big.is_subset_of(&h));
        assert!(h.is_subset_of(&big));
        assert!(Interval::point(r(0, 1)).is_subset_of(&big));
        assert!(!Interval::point(r(0, 1)).is_subset_of(&h));
    }

    #[test]
    fn clipping() {
        let iv = Interval::closed(r(3, 4), r(5, 4));
        assert_eq!(
            iv.clip(&Rational::zero(), &Rational::one()),
            Interval::closed(r(3, 4), r(1, 1))
        );
        let out = Interval::closed(r(5, 4), r(3, 2));
        assert!(out.clip(&Rational::zero(), &Rational::one()).is_empty());
    }

    #[test]
    fn closed_touching_counts_as_intersecting() {
        let a = Interval::closed(r(0, 1), r(1, 2));
        let b = Interval::closed(r(1, 2), r(3, 4));
        assert!(a.intersects(&b));
        let c = Interval::half_open(r(1, 2), r(3, 4));
        assert!(!a.intersects(&c));
        let d = Interval::closed(r(3, 5), r(7, 10));
        assert!(!a.intersects(&d));
    }
}
