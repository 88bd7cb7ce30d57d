//! Slope-threshold finite tests `T_i^n`, their unions `Y_i^n`, stair
//! indices, and exact verification of their structural properties.

use serde::{Deserialize, Serialize};

use crate::approx::TranslationTable;
use crate::error::{Error, Result};
use crate::interval::{FiniteTest, Interval};
use crate::measure::{union_decomposition, union_measure};
use crate::rational::Rational;
use crate::report::ClaimReport;

/// The first `n + 1` enumerated keys sorted increasingly, their values, and
/// the sentinel `q_{n+1} = 1` with value 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortedPrefix {
    qs: Vec<Rational>,
    gs: Vec<Rational>,
    /// Sorted position of each enumerated key `p_0, …, p_n`.
    positions: Vec<usize>,
}

impl SortedPrefix {
    pub fn new(g: &TranslationTable, n: usize) -> Result<Self> {
        let enumerated = g.enumeration();
        if n >= enumerated.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: enumerated.len().saturating_sub(1),
            });
        }
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&x, &y| enumerated[x].cmp(&enumerated[y]));
        let mut positions = vec![0; n + 1];
        for (pos, &idx) in order.iter().enumerate() {
            positions[idx] = pos;
        }
        let mut qs: Vec<Rational> = order.iter().map(|&x| enumerated[x].clone()).collect();
        let mut gs: Vec<Rational> = qs
            .iter()
            .map(|q| g.value(q).cloned())
            .collect::<Result<_>>()?;
        if let Some(q) = qs.iter().find(|q| !q.in_unit_half_open()) {
            return Err(Error::Domain(format!("key {q} is not in [0, 1)")));
        }
        if let Some(w) = gs.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!(
                "values decrease between keys {} and {}",
                qs[w],
                qs[w + 1]
            )));
        }
        if gs.last().is_some_and(|v| v > &Rational::one()) {
            return Err(Error::Domain("values exceed 1".into()));
        }
        qs.push(Rational::one());
        gs.push(Rational::one());
        Ok(SortedPrefix { qs, gs, positions })
    }

    /// Index of the last real key.
    pub fn n(&self) -> usize {
        self.qs.len() - 2
    }

    /// `q_0, …, q_{n+1}` including the sentinel.
    pub fn qs(&self) -> &[Rational] {
        &self.qs
    }

    /// `g(q_0), …, g(q_{n+1})` including the sentinel value.
    pub fn gvals(&self) -> &[Rational] {
        &self.gs
    }

    /// Sorted position of the `K`-th enumerated key.
    pub fn position_of(&self, enum_index: usize) -> Option<usize> {
        self.positions.get(enum_index).copied()
    }

    /// Whether the slope from `q_k` to `q_m` (with `k < m`) is at most `t`.
    fn slope_at_most(&self, k: usize, m: usize, t: &Rational) -> bool {
        &self.gs[m] - &self.gs[k] <= t * (&self.qs[m] - &self.qs[k])
    }

    fn slope_at_least(&self, k: usize, m: usize, t: &Rational) -> bool {
        &self.gs[m] - &self.gs[k] >= t * (&self.qs[m] - &self.qs[k])
    }
}

/// `2^{i+1}`.
pub fn threshold(i: u32) -> Rational {
    Rational::pow2(i as i32 + 1)
}

/// `I(k, m)` before intersecting with `[0, 1]`.
pub fn raw_interval(prefix: &SortedPrefix, k: usize, m: usize, i: u32) -> Result<Interval> {
    let n = prefix.n();
    for idx in [k, m] {
        if idx > n {
            return Err(Error::IndexOutOfRange { index: idx, max: n });
        }
    }
    let t = threshold(i);
    if k >= m || !prefix.slope_at_least(k, m, &t) {
        return Ok(Interval::empty());
    }
    let hi = &prefix.qs[k] + (&prefix.gs[m] - &prefix.gs[k]) / &t;
    Ok(Interval::closed(prefix.qs[m].clone(), hi))
}

/// `I(k, m) ∩ [0, 1]`.
pub fn interval_ikm(prefix: &SortedPrefix, k: usize, m: usize, i: u32) -> Result<Interval> {
    Ok(raw_interval(prefix, k, m, i)?.clip(&Rational::zero(), &Rational::one()))
}

/// `T_i^n`: the clipped intervals for every `0 ≤ k < m ≤ n` in
/// lexicographic `(k, m)` order.
pub fn build_tin(prefix: &SortedPrefix, i: u32) -> FiniteTest {
    let n = prefix.n();
    (0..=n)
        .flat_map(|k| (k + 1..=n).map(move |m| (k, m)))
        .map(|(k, m)| interval_ikm(prefix, k, m, i).expect("indices in range"))
        .collect()
}

/// Disjoint decomposition of `Y_i^n`.
pub fn union_yin(prefix: &SortedPrefix, i: u32) -> Vec<Interval> {
    union_decomposition(&build_tin(prefix, i).intervals)
}

/// `0 = i_0 < … < i_s` with the virtual terminal index `i_{s+1} = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StairIndices {
    pub indices: Vec<usize>,
    pub terminal: usize,
}

impl StairIndices {
    /// `i_0, …, i_s, i_{s+1}`.
    pub fn with_terminal(&self) -> Vec<usize> {
        let mut v = self.indices.clone();
        v.push(self.terminal);
        v
    }
}

/// Greedy stair: each next index is the least later `m ≤ n` whose slope from
/// the current index is at most `2^{i+1}`.
pub fn stair_indices(prefix: &SortedPrefix, i: u32) -> StairIndices {
    let n = prefix.n();
    let t = threshold(i);
    let mut indices = vec![0];
    let mut cur = 0;
    while let Some(next) = (cur + 1..=n).find(|&m| prefix.slope_at_most(cur, m, &t)) {
        indices.push(next);
        cur = next;
    }
    StairIndices {
        indices,
        terminal: n + 1,
    }
}

/// All construction endpoints of `T_i^n`, the keys and the stair gaps, plus
/// the midpoint of every pair of consecutive distinct points. Every
/// membership predicate used by the checks is constant between consecutive
/// endpoints, so these points exhaust all cases.
pub fn sample_points(prefix: &SortedPrefix, i: u32) -> Vec<Rational> {
    let n = prefix.n();
    let mut pts: Vec<Rational> = vec![Rational::zero(), Rational::one()];
    pts.extend(prefix.qs.iter().cloned());
    for k in 0..=n {
        for m in k + 1..=n {
            let iv = raw_interval(prefix, k, m, i).expect("indices in range");
            if !iv.is_empty() {
                pts.push(iv.lo);
                pts.push(iv.hi);
            }
        }
    }
    let stair = stair_indices(prefix, i).with_terminal();
    let t = threshold(i);
    for w in stair.windows(2) {
        pts.push(&prefix.qs[w[0]] + (&prefix.gs[w[1]] - &prefix.gs[w[0]]) / &t);
    }
    pts.sort();
    pts.dedup();
    let mids: Vec<Rational> = pts.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    pts.extend(mids);
    pts.sort();
    pts
}

fn all_raw(prefix: &SortedPrefix, i: u32) -> Vec<Vec<Interval>> {
    let n = prefix.n();
    (0..=n)
        .map(|k| {
            (0..=n)
                .map(|m| raw_interval(prefix, k, m, i).expect("indices in range"))
                .collect()
        })
        .collect()
}

/// Checks every structural property of `T_i^n` for all `i ≤ i_max` and
/// `n ≤ n_max` (capped by the table size). Claim ids: `bound.1` measure
/// bound, `bound.2` nesting in `n`, `bound.4` neighbor equivalence,
/// `bound.5` the two containment implications, `bound.6` dominating
/// intervals, `bound.7` gap emptiness.
pub fn verify_bound_claims(g: &TranslationTable, i_max: u32, n_max: usize) -> Result<ClaimReport> {
    let mut report = ClaimReport::new();
    if g.is_empty() {
        return Ok(report);
    }
    let n_top = n_max.min(g.len() - 1);
    for i in 0..=i_max {
        let mut prev: Option<(FiniteTest, Vec<Interval>)> = None;
        for n in 0..=n_top {
            let prefix = SortedPrefix::new(g, n)?;
            let test = build_tin(&prefix, i);
            let union = union_decomposition(&test.intervals);
            check_prefix(&prefix, i, &union, &mut report);
            if let Some((prev_test, prev_union)) = &prev {
                check_nesting(prev_test, prev_union, &test, &union, i, n, &mut report);
            }
            prev = Some((test, union));
        }
    }
    Ok(report)
}

fn check_nesting(
    prev_test: &FiniteTest,
    prev_union: &[Interval],
    test: &FiniteTest,
    union: &[Interval],
    i: u32,
    n: usize,
    report: &mut ClaimReport,
) {
    let carried = prev_test.nonempty().all(|iv| test.intervals.contains(iv));
    report.check("bound.2", carried, || {
        format!(
            "i={i} n={n}: an interval of T^{} is missing from T^{n}",
            n - 1
        )
    });
    for part in prev_union {
        let inside = union.iter().any(|big| part.is_subset_of(big));
        report.check("bound.2", inside, || {
            format!(
                "i={i} n={n}: component [{}, {}] of Y^{} escapes Y^{n}",
                part.lo,
                part.hi,
                n - 1
            )
        });
    }
}

fn check_prefix(prefix: &SortedPrefix, i: u32, union: &[Interval], report: &mut ClaimReport) {
    let n = prefix.n();
    let t = threshold(i);
    let raw = all_raw(prefix, i);
    let tag = |s: String| format!("i={i} n={n}: {s}");

    let mu = union_measure(union);
    let bound = Rational::pow2(-(i as i32 + 1));
    report.check("bound.1", mu < bound, || {
        tag(format!("measure {mu} >= {bound}"))
    });

    let samples = sample_points(prefix, i);

    // neighbor equivalence on each [q_m, q_{m+1})
    let mut m = 0;
    for x in &samples {
        while m <= n && x >= &prefix.qs[m + 1] {
            m += 1;
        }
        if m > n || x < &prefix.qs[m] {
            continue;
        }
        for k in 0..m {
            let any = (0..=n).any(|l| raw[k][l].contains(x));
            let neighbor = raw[k][m].contains(x);
            report.check("bound.4", any == neighbor, || {
                tag(format!(
                    "x={x} m={m} k={k}: exists-l {any}, I(k,m) {neighbor}"
                ))
            });
        }
    }

    // the two containment implications
    for k in 0..=n {
        for l in k + 1..=n {
            if prefix.slope_at_most(k, l, &t) {
                for mm in l + 1..=n {
                    let ok = raw[k][mm].is_subset_of(&raw[l][mm]);
                    report.check("bound.5", ok, || {
                        tag(format!(
                            "slope({k},{l}) <= t but I({k},{mm}) not in I({l},{mm})"
                        ))
                    });
                }
            }
            if prefix.slope_at_least(k, l, &t) {
                for mm in 0..=n {
                    let ok = raw[l][mm].is_subset_of(&raw[k][mm]);
                    report.check("bound.5", ok, || {
                        tag(format!(
                            "slope({k},{l}) >= t but I({l},{mm}) not in I({k},{mm})"
                        ))
                    });
                }
            }
        }
    }

    let stair = stair_indices(prefix, i);
    let steps = stair.with_terminal();

    // stair definition itself
    for w in steps.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= n {
            report.check("bound.stair", prefix.slope_at_most(a, b, &t), || {
                tag(format!("stair step {a}->{b} has slope above threshold"))
            });
        }
        for mm in a + 1..b.min(n + 1) {
            report.check("bound.stair", !prefix.slope_at_most(a, mm, &t), || {
                tag(format!(
                    "intermediate {mm} after {a} has slope at most threshold"
                ))
            });
        }
    }

    // dominating intervals
    for w in steps.windows(2) {
        let (ij, inext) = (w[0], w[1]);
        for k in 0..inext.min(n + 1) {
            report.check("bound.6", raw[k][ij].is_empty(), || {
                tag(format!("I({k},{ij}) is nonempty"))
            });
            for mm in ij + 1..=n {
                let ok = raw[k][mm].is_subset_of(&raw[ij][mm]);
                report.check("bound.6", ok, || {
                    tag(format!("I({k},{mm}) not inside I({ij},{mm})"))
                });
            }
        }
    }

    // gap emptiness
    for w in steps.windows(2) {
        let (a, b) = (w[0], w[1]);
        let gap_lo = &prefix.qs[a] + (&prefix.gs[b] - &prefix.gs[a]) / &t;
        let gap_hi = &prefix.qs[b];
        for x in samples.iter().filter(|x| *x > &gap_lo && *x < gap_hi) {
            let hit = raw.iter().flatten().any(|iv| iv.contains(x));
            report.check("bound.7", !hit, || {
                tag(format!("x={x} in gap ({gap_lo}, {gap_hi}) is covered"))
            });
        }
    }
}

/// Result of following the constructive argument that places `β` inside an
/// interval of `T_i^M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub m: usize,
    pub interval: Interval,
    pub contains_beta: bool,
}

/// Given keys `q < p_M < β` where `q = p_K` with `K < M`, returns the
/// interval `I(k, m) ∩ [0, 1]` of `T_i^M` indexed by the sorted positions of
/// `q` and `p_M`.
///
/// Returns `None` when `α − g(q) ≤ 2^{i+1}(β − q)`, i.e. when `q` does not
/// violate the scaled Solovay bound. Fails with a precondition error when
/// `g(p_M) − g(q) ≤ 2^{i+1}(β − q)`, since then `p_M` is not close enough to
/// `β` for the containment to follow.
pub fn locate_witness(
    g: &TranslationTable,
    alpha: &Rational,
    beta: &Rational,
    i: u32,
    q: &Rational,
    p_m: &Rational,
) -> Result<Option<Witness>> {
    let enumerated = g.enumeration();
    let find = |x: &Rational| {
        enumerated
            .iter()
            .position(|p| p == x)
            .ok_or_else(|| Error::MissingKey(x.clone()))
    };
    let (big_k, big_m) = (find(q)?, find(p_m)?);
    if !(q < p_m && p_m < beta) {
        return Err(Error::Precondition(format!(
            "need q < p_M < beta, got {q}, {p_m}, {beta}"
        )));
    }
    if big_k >= big_m {
        return Err(Error::Precondition(format!(
            "q is enumerated at {big_k}, not before p_M at {big_m}"
        )));
    }
    let t = threshold(i);
    let (gq, gm) = (g.value(q)?, g.value(p_m)?);
    let scaled_gap = &t * (beta - q);
    if alpha - gq <= scaled_gap {
        return Ok(None);
    }
    if gm - gq <= scaled_gap {
        return Err(Error::Precondition(format!(
            "g(p_M) - g(q) = {} is not above {scaled_gap}",
            gm - gq
        )));
    }
    let prefix = SortedPrefix::new(g, big_m)?;
    let k = prefix.position_of(big_k).expect("K <= M");
    let m = prefix.position_of(big_m).expect("M in prefix");
    let interval = interval_ikm(&prefix, k, m, i)?;
    let contains_beta = interval.contains(beta);
    Ok(Some(Witness {
        k,
        m,
        interval,
        contains_beta,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn table(pairs: &[((i64, i64), (i64, i64))]) -> TranslationTable {
        TranslationTable::from_pairs(
            pairs
                .iter()
                .map(|&((a, b), (c, d))| (r(a, b), r(c, d)))
                .collect(),
        )
        .unwrap()
    }

    fn trace_table() -> TranslationTable {
        table(&[((0, 1), (0, 1)), ((1, 4), (3, 4)), ((1, 2), (7, 8))])
    }

    #[test]
    fn interval_examples() {
        let p = SortedPrefix::new(&trace_table(), 2).unwrap();
        assert_eq!(
            interval_ikm(&p, 0, 1, 0).unwrap(),
            Interval::closed(r(1, 4), r(3, 8))
        );
        assert!(interval_ikm(&p, 1, 1, 0).unwrap().is_empty());
        assert!(interval_ikm(&p, 2, 1, 0).unwrap().is_empty());
        assert!(interval_ikm(&p, 0, 3, 0).is_err());
        let flat = table(&[((0, 1), (0, 1)), ((1, 2), (1, 2))]);
        let p = SortedPrefix::new(&flat, 1).unwrap();
        assert!(interval_ikm(&p, 0, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn tin_example() {
        let p = SortedPrefix::new(&trace_table(), 2).unwrap();
        let t = build_tin(&p, 0);
        assert_eq!(t.len(), 3);
        assert_eq!(t.intervals[0], Interval::closed(r(1, 4), r(3, 8)));
        assert!(t.intervals[1].is_empty() && t.intervals[2].is_empty());
        assert_eq!(union_yin(&p, 0), vec![Interval::closed(r(1, 4), r(3, 8))]);
        assert_eq!(union_measure(&t.intervals), r(1, 8));
        assert_eq!(stair_indices(&p, 0).indices, vec![0, 2]);

        let single = SortedPrefix::new(&trace_table(), 0).unwrap();
        assert!(build_tin(&single, 0).is_empty());
        assert!(union_yin(&single, 0).is_empty());
    }

    #[test]
    fn stair_extremes() {
        let gentle = table(&[((0, 1), (0, 1)), ((1, 4), (1, 8)), ((1, 2), (1, 4))]);
        let p = SortedPrefix::new(&gentle, 2).unwrap();
        assert_eq!(stair_indices(&p, 0).indices, vec![0, 1, 2]);
        let steep = table(&[((0, 1), (0, 1)), ((1, 16), (1, 2)), ((1, 8), (7, 8))]);
        let p = SortedPrefix::new(&steep, 2).unwrap();
        assert_eq!(stair_indices(&p, 0).indices, vec![0]);
        assert_eq!(stair_indices(&p, 0).terminal, 3);
    }

    #[test]
    fn sorted_prefix_tracks_enumeration() {
        let g = table(&[((1, 2), (1, 2)), ((0, 1), (0, 1)), ((1, 4), (1, 4))]);
        let p = SortedPrefix::new(&g, 2).unwrap();
        assert_eq!(p.qs(), &[r(0, 1), r(1, 4), r(1, 2), r(1, 1)]);
        assert_eq!(p.position_of(0), Some(2));
        assert_eq!(p.position_of(1), Some(0));
        let bad = table(&[((0, 1), (1, 2)), ((1, 4), (1, 4))]);
        assert!(SortedPrefix::new(&bad, 1).is_err());
    }

    #[test]
    fn claims_on_trace_and_constant() {
        let rep = verify_bound_claims(&trace_table(), 2, 2).unwrap();
        assert!(rep.pass(), "{:?}", rep.violations);
        for id in [
            "bound.1", "bound.2", "bound.4", "bound.5", "bound.6", "bound.7",
        ] {
            assert!(rep.count(id) > 0, "{id} never evaluated");
        }
        let flat = table(&[((0, 1), (1, 4)), ((1, 4), (1, 4)), ((1, 2), (1, 4))]);
        let rep = verify_bound_claims(&flat, 2, 2).unwrap();
        assert!(rep.pass());
    }

    #[test]
    fn witness_for_engineered_violation() {
        // β = 3/4, α = 7/8, i = 0: at q = 1/2, α − g(q) = 7/8 > 2·(β − q) = 1/2
        let g = table(&[((1, 2), (0, 1)), ((0, 1), (0, 1)), ((23, 32), (13, 16))]);
        let alpha = r(7, 8);
        let beta = r(3, 4);
        let w = locate_witness(&g, &alpha, &beta, 0, &r(1, 2), &r(23, 32))
            .unwrap()
            .unwrap();
        assert!(w.contains_beta);
        assert_eq!((w.k, w.m), (1, 2));
        // no violation at q = 0: α − g(0) = 7/8 ≤ 2·3/4
        assert_eq!(
            locate_witness(&g, &alpha, &beta, 0, &r(0, 1), &r(23, 32)).unwrap(),
            None
        );
        // p_M too far from β
        let far = table(&[((1, 2), (0, 1)), ((5, 8), (1, 8))]);
        assert!(matches!(
            locate_witness(&far, &alpha, &beta, 0, &r(1, 2), &r(5, 8)),
            Err(Error::Precondition(_))
        ));
    }
}
