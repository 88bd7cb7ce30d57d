//! Covering functions and the measure of finite tests.
//!
//! The measure of a test is computed two independent ways: by summing the
//! interval lengths, and by integrating the covering function segment by
//! segment. The two must agree exactly.

use crate::error::{Error, Result};
use crate::interval::{FiniteTest, Interval, IntervalKind};
use crate::rational::Rational;
use crate::step::StepFunction;

/// Covering function of `test` on `[0, 1]`.
pub fn covering_function(test: &FiniteTest) -> Result<StepFunction> {
    let (zero, one) = (Rational::zero(), Rational::one());
    for iv in test.nonempty() {
        if !iv.lo.in_unit_closed() || !iv.hi.in_unit_closed() {
            return Err(Error::Domain(format!(
                "interval [{}, {}] is not inside [0, 1]",
                iv.lo, iv.hi
            )));
        }
    }
    Ok(covering_function_on(test, &zero, &one))
}

/// Smallest closed interval containing `[0, 1]` and every nonempty interval
/// of `test`.
pub fn covering_domain(test: &FiniteTest) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for iv in test.nonempty() {
        if iv.lo < lo {
            lo = iv.lo.clone();
        }
        if iv.hi > hi {
            hi = iv.hi.clone();
        }
    }
    (lo, hi)
}

/// Covering function of `test` restricted to `[lo, hi]`, built by an
/// endpoint sweep over difference arrays.
///
/// Intervals are clipped to the domain; `lo < hi` is required.
pub fn covering_function_on(test: &FiniteTest, lo: &Rational, hi: &Rational) -> StepFunction {
    assert!(lo < hi, "empty covering domain");
    let clipped: Vec<Interval> = test
        .nonempty()
        .map(|iv| iv.clip(lo, hi))
        .filter(|iv| !iv.is_empty())
        .collect();

    let mut breakpoints: Vec<Rational> = Vec::with_capacity(2 * clipped.len() + 2);
    breakpoints.push(lo.clone());
    breakpoints.push(hi.clone());
    for iv in &clipped {
        breakpoints.push(iv.lo.clone());
        breakpoints.push(iv.hi.clone());
    }
    breakpoints.sort();
    breakpoints.dedup();

    let n = breakpoints.len();
    let mut seg_diff = vec![0i64; n];
    let mut pt_diff = vec![0i64; n + 1];
    for iv in &clipped {
        let a = breakpoints.binary_search(&iv.lo).expect("endpoint present");
        let b = breakpoints.binary_search(&iv.hi).expect("endpoint present");
        // open segments a..b lie inside the interval
        seg_diff[a] += 1;
        seg_diff[b] -= 1;
        let first_point = match iv.kind {
            IntervalKind::Closed => a,
            IntervalKind::HalfOpenLeft => a + 1,
        };
        pt_diff[first_point] += 1;
        pt_diff[b + 1] -= 1;
    }

    let prefix = |diff: &[i64], len: usize| -> Vec<u64> {
        diff.iter()
            .take(len)
            .scan(0i64, |acc, d| {
                *acc += d;
                Some(*acc as u64)
            })
            .collect()
    };
    let segment_values = prefix(&seg_diff, n - 1);
    let point_values = prefix(&pt_diff, n);
    StepFunction::new(breakpoints, segment_values, point_values).expect("well-formed sweep")
}

/// `Σ max(hi − lo, 0)` over all intervals.
pub fn test_measure(test: &FiniteTest) -> Rational {
    test.iter().map(Interval::measure).sum()
}

/// `∫ cov(x) dx` computed from the covering step function. The integration
/// domain is widened past `[0, 1]` when the test reaches outside it, so the
/// result always equals [`test_measure`].
pub fn measure_via_integral(test: &FiniteTest) -> Rational {
    let (lo, hi) = covering_domain(test);
    covering_function_on(test, &lo, &hi).integral()
}

/// Disjoint closed intervals whose union is the closure of the union of the
/// nonempty input intervals, sorted left to right. Touching intervals merge.
pub fn union_decomposition(intervals: &[Interval]) -> Vec<Interval> {
    let mut live: Vec<&Interval> = intervals.iter().filter(|iv| !iv.is_empty()).collect();
    live.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::new();
    for iv in live {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi.clone();
                }
            }
            _ => out.push(Interval::closed(iv.lo.clone(), iv.hi.clone())),
        }
    }
    out
}

/// Lebesgue measure of the union of `intervals`.
pub fn union_measure(intervals: &[Interval]) -> Rational {
    union_decomposition(intervals)
        .iter()
        .map(Interval::measure)
        .sum()
}

/// Number of intervals of `test` containing `x`, by direct membership.
pub fn brute_force_count(test: &FiniteTest, x: &Rational) -> u64 {
    test.iter().filter(|iv| iv.contains(x)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn closed(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::closed(r(a.0, a.1), r(b.0, b.1))
    }

    #[test]
    fn shared_endpoint_counts_twice() {
        let split = FiniteTest::new(vec![closed((1, 5), (3, 10)), closed((3, 10), (7, 10))]);
        let whole = FiniteTest::new(vec![closed((1, 5), (7, 10))]);
        assert_eq!(covering_function(&split).unwrap().eval(&r(3, 10)), Some(2));
        assert_eq!(covering_function(&whole).unwrap().eval(&r(3, 10)), Some(1));
    }

    #[test]
    fn empty_test_is_zero() {
        let f = covering_function(&FiniteTest::default()).unwrap();
        assert_eq!(f.eval(&r(1, 2)), Some(0));
        assert_eq!(f.max_value(), 0);
        assert_eq!(test_measure(&FiniteTest::default()), Rational::zero());
        assert_eq!(
            measure_via_integral(&FiniteTest::default()),
            Rational::zero()
        );
    }

    #[test]
    fn degenerate_points_stack_without_measure() {
        let t = FiniteTest::new(vec![Interval::point(r(2, 5)), Interval::point(r(2, 5))]);
        let f = covering_function(&t).unwrap();
        assert_eq!(f.eval(&r(2, 5)), Some(2));
        assert_eq!(f.eval(&r(1, 5)), Some(0));
        assert_eq!(f.eval(&r(3, 5)), Some(0));
        assert_eq!(test_measure(&t), Rational::zero());
        assert_eq!(measure_via_integral(&t), Rational::zero());
    }

    #[test]
    fn measures_of_overlapping_pair() {
        let t = FiniteTest::new(vec![closed((0, 1), (1, 2)), closed((1, 4), (3, 4))]);
        assert_eq!(test_measure(&t), r(1, 1));
        // 1/4·1 + 1/4·2 + 1/4·1
        assert_eq!(measure_via_integral(&t), r(1, 1));
        assert_eq!(union_measure(&t.intervals), r(3, 4));
    }

    #[test]
    fn single_interval_measure() {
        let t = FiniteTest::new(vec![closed((1, 4), (3, 8))]);
        assert_eq!(test_measure(&t), r(1, 8));
        assert_eq!(measure_via_integral(&t), r(1, 8));
    }

    #[test]
    fn union_measure_cases() {
        assert_eq!(
            union_measure(&[closed((0, 1), (1, 8)), closed((1, 4), (3, 8))]),
            r(1, 4)
        );
        assert_eq!(union_measure(&[Interval::point(r(1, 3))]), Rational::zero());
        assert_eq!(union_measure(&[Interval::empty()]), Rational::zero());
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let t = FiniteTest::new(vec![closed((1, 2), (3, 2))]);
        assert!(matches!(covering_function(&t), Err(Error::Domain(_))));
        // empties are ignored by the range check
        let t = FiniteTest::new(vec![Interval::closed(r(5, 1), r(2, 1))]);
        assert!(covering_function(&t).is_ok());
        // the integral widens its domain instead of failing
        let t = FiniteTest::new(vec![closed((1, 2), (3, 2))]);
        assert_eq!(measure_via_integral(&t), r(1, 1));
    }

    #[test]
    fn half_open_left_endpoint_excluded() {
        let t = FiniteTest::new(vec![
            Interval::half_open(r(1, 4), r(1, 2)),
            closed((0, 1), (1, 4)),
        ]);
        let f = covering_function(&t).unwrap();
        assert_eq!(f.eval(&r(1, 4)), Some(1));
        assert_eq!(f.eval(&r(1, 2)), Some(1));
        assert_eq!(f.eval(&r(3, 8)), Some(1));
        assert_eq!(f.eval(&r(3, 4)), Some(0));
    }

    #[test]
    fn touching_intervals_merge_in_union() {
        let u = union_decomposition(&[closed((1, 2), (3, 4)), closed((0, 1), (1, 2))]);
        assert_eq!(u, vec![closed((0, 1), (3, 4))]);
    }
}
