//! Left-c.e. approximations, translation tables, Solovay-condition checks and
//! the constructions that turn approximation pairs into translation tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::ClaimReport;

/// A finite nondecreasing approximation `a_0 ≤ … ≤ a_N` of an explicitly
/// supplied limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftCeApproximation {
    pub terms: Vec<Rational>,
    pub limit: Rational,
    /// Permits a final run of terms equal to the limit.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub stabilizes: bool,
}

impl LeftCeApproximation {
    /// Validated constructor with strict `a_n < limit`.
    pub fn new(terms: Vec<Rational>, limit: Rational) -> Result<Self> {
        let approx = LeftCeApproximation {
            terms,
            limit,
            stabilizes: false,
        };
        approx.validate()?;
        Ok(approx)
    }

    /// Validated constructor that allows the sequence to reach its limit.
    pub fn stabilizing(terms: Vec<Rational>, limit: Rational) -> Result<Self> {
        let approx = LeftCeApproximation {
            terms,
            limit,
            stabilizes: true,
        };
        approx.validate()?;
        Ok(approx)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.limit.in_unit_half_open() {
            return Err(Error::Domain(format!(
                "limit {} is not in [0, 1)",
                self.limit
            )));
        }
        if let Some(t) = self.terms.iter().find(|t| t.is_negative()) {
            return Err(Error::Domain(format!("negative term {t}")));
        }
        if let Some(w) = self.terms.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("terms decrease at index {}", w + 1)));
        }
        let reached = self.terms.iter().position(|t| t >= &self.limit);
        if let Some(n) = reached {
            let tail_is_limit = self.terms[n..].iter().all(|t| t == &self.limit);
            if !self.stabilizes || !tail_is_limit {
                return Err(Error::Domain(format!(
                    "term {} at index {n} is not below the limit {}",
                    self.terms[n], self.limit
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn last_index(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }
}

/// A finite sample of a translation function together with a fixed
/// enumeration order of its keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct TranslationTable {
    entries: BTreeMap<Rational, Rational>,
    enumeration: Vec<Rational>,
    monotone: bool,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    entries: Vec<(Rational, Rational)>,
    enumeration: Vec<Rational>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    monotone: bool,
}

impl TryFrom<TableRepr> for TranslationTable {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        let table = TranslationTable::new(repr.entries, repr.enumeration)?;
        if repr.monotone {
            table.into_monotone()
        } else {
            Ok(table)
        }
    }
}

impl From<TranslationTable> for TableRepr {
    fn from(t: TranslationTable) -> Self {
        TableRepr {
            entries: t.entries.into_iter().collect(),
            enumeration: t.enumeration,
            monotone: t.monotone,
        }
    }
}

impl TranslationTable {
    /// Builds a table; the enumeration must list every key exactly once.
    pub fn new(entries: Vec<(Rational, Rational)>, enumeration: Vec<Rational>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (q, gq) in entries {
            if map.insert(q.clone(), gq).is_some() {
                return Err(Error::Domain(format!("duplicate key {q}")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &enumeration {
            if !map.contains_key(p) {
                return Err(Error::MissingKey(p.clone()));
            }
            if !seen.insert(p) {
                return Err(Error::Domain(format!("key {p} enumerated twice")));
            }
        }
        if seen.len() != map.len() {
            return Err(Error::Domain(format!(
                "enumeration lists {} of {} keys",
                seen.len(),
                map.len()
            )));
        }
        Ok(TranslationTable {
            entries: map,
            enumeration,
            monotone: false,
        })
    }

    /// Builds a table whose enumeration is the order in which `entries` are
    /// given.
    pub fn from_pairs(entries: Vec<(Rational, Rational)>) -> Result<Self> {
        let enumeration = entries.iter().map(|(q, _)| q.clone()).collect();
        TranslationTable::new(entries, enumeration)
    }

    /// Sets the monotone flag after validating it.
    pub fn into_monotone(mut self) -> Result<Self> {
        if let Some(q) = self.first_monotonicity_violation() {
            return Err(Error::Domain(format!("table decreases at key {q}")));
        }
        self.monotone = true;
        Ok(self)
    }

    pub fn is_flagged_monotone(&self) -> bool {
        self.monotone
    }

    /// Whether `q < q'` implies `g(q) ≤ g(q')` on the keys.
    pub fn is_monotone(&self) -> bool {
        self.first_monotonicity_violation().is_none()
    }

    fn first_monotonicity_violation(&self) -> Option<&Rational> {
        let mut prev: Option<&Rational> = None;
        for (q, gq) in &self.entries {
            if prev.is_some_and(|p| p > gq) {
                return Some(q);
            }
            prev = Some(gq);
        }
        None
    }

    /// Checks that every key and value lies in `[0, 1)`.
    pub fn validate_range(&self) -> Result<()> {
        for (q, gq) in &self.entries {
            if !q.in_unit_half_open() || !gq.in_unit_half_open() {
                return Err(Error::Domain(format!(
                    "entry {q} -> {gq} is outside [0, 1)"
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, q: &Rational) -> Option<&Rational> {
        self.entries.get(q)
    }

    pub fn value(&self, q: &Rational) -> Result<&Rational> {
        self.entries
            .get(q)
            .ok_or_else(|| Error::MissingKey(q.clone()))
    }

    pub fn contains_key(&self, q: &Rational) -> bool {
        self.entries.contains_key(q)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keys in increasing order.
    pub fn keys(&self) -> impl Iterator<Item = &Rational> {
        self.entries.keys()
    }

    /// Entries in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.entries.iter()
    }

    /// Keys in enumeration order `p_0, p_1, …`.
    pub fn enumeration(&self) -> &[Rational] {
        &self.enumeration
    }
}

/// Outcome of a pointwise condition check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport<T> {
    pub pass: bool,
    pub violations: Vec<T>,
}

impl<T> ConditionReport<T> {
    fn from_violations(violations: Vec<T>) -> Self {
        ConditionReport {
            pass: violations.is_empty(),
            violations,
        }
    }
}

/// Tests `0 < α − g(q) < c(β − q)` at every key of `g`.
pub fn check_solovay_condition(
    g: &TranslationTable,
    alpha: &Rational,
    beta: &Rational,
    c: &Rational,
) -> Result<ConditionReport<Rational>> {
    if let Some(q) = g.keys().find(|q| *q >= beta) {
        return Err(Error::Precondition(format!(
            "key {q} is not below beta {beta}"
        )));
    }
    let violations = g
        .iter()
        .filter(|(q, gq)| {
            let gap = alpha - *gq;
            !(gap.is_positive() && gap < c * (beta - *q))
        })
        .map(|(q, _)| q.clone())
        .collect();
    Ok(ConditionReport::from_violations(violations))
}

/// Tests `α − a_n < c(β − b_n)` for every `n`; violations are indices.
pub fn check_index_condition(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    c: &Rational,
) -> Result<ConditionReport<usize>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let violations = a
        .terms
        .iter()
        .zip(&b.terms)
        .enumerate()
        .filter(|(_, (an, bn))| &a.limit - *an >= c * (&b.limit - *bn))
        .map(|(n, _)| n)
        .collect();
    Ok(ConditionReport::from_violations(violations))
}

/// Largest `n` with `b_n ≤ q`, if any.
fn last_at_most(b: &[Rational], q: &Rational) -> Option<usize> {
    b.partition_point(|bn| bn <= q).checked_sub(1)
}

/// Largest `t` with `b_t < q`, if any.
fn last_below(b: &[Rational], q: &Rational) -> Option<usize> {
    b.partition_point(|bt| bt < q).checked_sub(1)
}

/// Least `t` with `b_t > q`, if any.
fn first_above(b: &[Rational], q: &Rational) -> Option<usize> {
    let t = b.partition_point(|bt| bt <= q);
    (t < b.len()).then_some(t)
}

/// Least `n` with `b_n ≥ q`, if any.
fn first_at_least(b: &[Rational], q: &Rational) -> Option<usize> {
    let n = b.partition_point(|bn| bn < q);
    (n < b.len()).then_some(n)
}

fn dedup_queries(queries: &[Rational]) -> Vec<Rational> {
    let mut seen = std::collections::BTreeSet::new();
    queries
        .iter()
        .filter(|q| seen.insert((*q).clone()))
        .cloned()
        .collect()
}

/// The nondecreasing table `g(q) = a_{max{n : b_n ≤ q}}` at each query, in
/// query order.
pub fn monotonize(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    queries: &[Rational],
) -> Result<TranslationTable> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut entries = Vec::with_capacity(queries.len());
    for q in dedup_queries(queries) {
        let n = last_at_most(&b.terms, &q).ok_or_else(|| Error::UndefinedIndex(q.clone()))?;
        entries.push((q, a.terms[n].clone()));
    }
    TranslationTable::from_pairs(entries)?.into_monotone()
}

/// The lower and upper translation tables
/// `f(q) = max{a_0, a_{max{t : b_t < q}}}` and `h(q) = a_{min{t : b_t > q}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sandwich {
    pub f: TranslationTable,
    pub h: TranslationTable,
    /// Queries at which `h` is undefined because no `b_t > q` exists.
    pub h_undefined: Vec<Rational>,
}

pub fn sandwich_functions(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    queries: &[Rational],
) -> Result<Sandwich> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Precondition("empty approximations".into()));
    }
    let mut f_entries = Vec::new();
    let mut h_entries = Vec::new();
    let mut h_undefined = Vec::new();
    for q in dedup_queries(queries) {
        let f_val = match last_below(&b.terms, &q) {
            Some(t) if a.terms[t] > a.terms[0] => a.terms[t].clone(),
            _ => a.terms[0].clone(),
        };
        f_entries.push((q.clone(), f_val));
        match first_above(&b.terms, &q) {
            Some(t) => h_entries.push((q, a.terms[t].clone())),
            None => h_undefined.push(q),
        }
    }
    Ok(Sandwich {
        f: TranslationTable::from_pairs(f_entries)?,
        h: TranslationTable::from_pairs(h_entries)?,
        h_undefined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Points `b_n + (b_{n+1} − b_n)/2^k` to the right of `b_n`.
    Dyadic,
    /// Points `b_n − (b_n − b_{n−1})/3^k` to the left of `b_n`.
    Triadic,
}

/// The points of one branch for a fixed `n`, ordered by `k = 1, 2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub n: usize,
    pub branch: Branch,
    pub points: Vec<(u32, Rational)>,
    /// True when every `k` up to the requested depth was materialized.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonmonotoneTable {
    pub table: TranslationTable,
    pub families: Vec<Family>,
    pub warnings: Vec<String>,
}

/// Builds a translation table that oscillates between the approximations:
/// for `n, k ≥ 1`,
/// `g(b_n + (b_{n+1} − b_n)/2^k) = a_{n+k}` and
/// `g(b_n − (b_n − b_{n−1})/3^k) = a_{n+k} − c(b_{n+k} − b_n)`,
/// and `g(q) = a_{min{n : b_n ≥ q}}` at each of `extra_points` not already
/// constructed. Points whose indices run past the data are dropped with a
/// warning.
pub fn build_nonmonotone(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    c: &Rational,
    depth: u32,
    extra_points: &[Rational],
) -> Result<NonmonotoneTable> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let last = a.len().saturating_sub(1);
    let (an, bn) = (&a.terms, &b.terms);
    let mut entries: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut enumeration = Vec::new();
    let mut families = Vec::new();
    let mut warnings = Vec::new();

    let mut insert =
        |q: Rational, v: Rational, entries: &mut BTreeMap<Rational, Rational>| -> Result<()> {
            if entries.contains_key(&q) {
                return Err(Error::InvalidScenario(format!(
                    "constructed points collide at {q}"
                )));
            }
            enumeration.push(q.clone());
            entries.insert(q, v);
            Ok(())
        };

    for n in 1..=last {
        for branch in [Branch::Dyadic, Branch::Triadic] {
            let width = match branch {
                Branch::Dyadic if n < last => &bn[n + 1] - &bn[n],
                Branch::Dyadic => continue,
                Branch::Triadic => &bn[n] - &bn[n - 1],
            };
            if !width.is_positive() {
                continue;
            }
            let mut points = Vec::new();
            let mut complete = true;
            for k in 1..=depth {
                let idx = n + k as usize;
                if idx > last {
                    complete = false;
                    warnings.push(format!(
                        "{branch:?} family n={n} truncated at k={k}: index {idx} exceeds {last}"
                    ));
                    break;
                }
                let (q, v) = match branch {
                    Branch::Dyadic => (
                        &bn[n] + &width * Rational::pow2(-(k as i32)),
                        an[idx].clone(),
                    ),
                    Branch::Triadic => (
                        &bn[n] - &width * Rational::pow3(-(k as i32)),
                        &an[idx] - c * (&bn[idx] - &bn[n]),
                    ),
                };
                if !v.in_unit_half_open() {
                    warnings.push(format!("value {v} at {q} is outside [0, 1)"));
                }
                insert(q.clone(), v, &mut entries)?;
                points.push((k, q));
            }
            families.push(Family {
                n,
                branch,
                points,
                complete,
            });
        }
    }

    for q in dedup_queries(extra_points) {
        if entries.contains_key(&q) {
            continue;
        }
        if q >= b.limit {
            warnings.push(format!("fallback point {q} is not below beta"));
            continue;
        }
        match first_at_least(bn, &q) {
            Some(n) => insert(q, an[n].clone(), &mut entries)?,
            None => warnings.push(format!("fallback point {q} lies beyond the data")),
        }
    }

    let table = TranslationTable::new(entries.into_iter().collect(), enumeration)?;
    Ok(NonmonotoneTable {
        table,
        families,
        warnings,
    })
}

/// Exact ratios `(α − g(q))/(β − q)` in input order.
pub fn ratio_sequence(
    g: &TranslationTable,
    alpha: &Rational,
    beta: &Rational,
    qs: &[Rational],
) -> Result<Vec<(Rational, Rational)>> {
    qs.iter()
        .map(|q| {
            let gq = g.value(q)?;
            if q >= beta {
                return Err(Error::Precondition(format!(
                    "query {q} is not below beta {beta}"
                )));
            }
            Ok((q.clone(), (alpha - gq) / (beta - q)))
        })
        .collect()
}

/// Upper bound on `|ratio − c|` at the `k`-th point of the triadic family at
/// `n`: `((α − a_{n+k}) + c(β − b_{n+k}) + c(b_n − b_{n−1})/3^k)/(β − b_n)`.
pub fn triadic_deviation_bound(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    c: &Rational,
    n: usize,
    k: u32,
) -> Rational {
    let idx = n + k as usize;
    let numerator = (&a.limit - &a.terms[idx])
        + c * (&b.limit - &b.terms[idx])
        + c * (&b.terms[n] - &b.terms[n - 1]) * Rational::pow3(-(k as i32));
    numerator / (&b.limit - &b.terms[n])
}

/// Checks the three constructions on one approximation pair. Claim ids:
/// `approx.index` the index condition of the input, `approx.monotonize`
/// monotonicity and the Solovay condition at the keys `b_n`,
/// `approx.sandwich` `f(b_n) ≤ a_n ≤ h(b_n)` wherever `h(b_n)` is defined,
/// `approx.solovay` the Solovay condition at every constructed point,
/// `approx.dyadic` strictly decreasing ratios along each dyadic family and
/// `approx.triadic` the deviation bound along each triadic family.
pub fn verify_approx_claims(
    a: &LeftCeApproximation,
    b: &LeftCeApproximation,
    c: &Rational,
    depth: u32,
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new();
    let (alpha, beta) = (&a.limit, &b.limit);
    let index = check_index_condition(a, b, c)?;
    report.check("approx.index", index.pass, || {
        format!("index condition fails at n = {:?}", index.violations)
    });

    let mono = monotonize(a, b, &b.terms)?;
    report.check("approx.monotonize", mono.is_monotone(), || {
        "output is not monotone".into()
    });
    let sol = check_solovay_condition(&mono, alpha, beta, c)?;
    report.check("approx.monotonize", sol.pass, || {
        format!("Solovay condition fails at {:?}", sol.violations)
    });

    let sw = sandwich_functions(a, b, &b.terms)?;
    for (n, bn) in b.terms.iter().enumerate() {
        let Some(h) = sw.h.get(bn) else { continue };
        let f = sw.f.value(bn)?;
        let an = &a.terms[n];
        report.check("approx.sandwich", f <= an && an <= h, || {
            format!("n = {n}: f = {f}, a_n = {an}, h = {h}")
        });
    }

    let built = build_nonmonotone(a, b, c, depth, &[])?;
    let sol = check_solovay_condition(&built.table, alpha, beta, c)?;
    report.check("approx.solovay", sol.pass, || {
        format!("Solovay condition fails at {:?}", sol.violations)
    });
    for fam in &built.families {
        let ratios = fam
            .points
            .iter()
            .map(|(_, q)| Ok((alpha - built.table.value(q)?) / (beta - q)))
            .collect::<Result<Vec<_>>>()?;
        match fam.branch {
            Branch::Dyadic => {
                for (w, pair) in ratios.windows(2).enumerate() {
                    report.check("approx.dyadic", pair[1] < pair[0], || {
                        format!(
                            "n = {}, k = {}: ratio {} then {}",
                            fam.n,
                            w + 1,
                            pair[0],
                            pair[1]
                        )
                    });
                }
            }
            Branch::Triadic => {
                for ((k, _), ratio) in fam.points.iter().zip(&ratios) {
                    let bound = triadic_deviation_bound(a, b, c, fam.n, *k);
                    let dev = (ratio - c).abs();
                    report.check("approx.triadic", dev <= bound, || {
                        format!("n = {}, k = {k}: |ratio - c| = {dev} > {bound}", fam.n)
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn seq(v: &[(i64, i64)], limit: Rational) -> LeftCeApproximation {
        LeftCeApproximation::new(v.iter().map(|&(n, d)| r(n, d)).collect(), limit).unwrap()
    }

    fn pair() -> (LeftCeApproximation, LeftCeApproximation) {
        (
            seq(&[(0, 1), (1, 4), (1, 3)], r(1, 2)),
            // the limit 1 of the worked example lies outside [0, 1)
            LeftCeApproximation {
                terms: vec![r(0, 1), r(1, 2), r(3, 4)],
                limit: r(1, 1),
                stabilizes: false,
            },
        )
    }

    #[test]
    fn approximation_validation() {
        assert!(LeftCeApproximation::new(vec![r(1, 2), r(1, 4)], r(3, 4)).is_err());
        assert!(LeftCeApproximation::new(vec![r(1, 4), r(3, 4)], r(3, 4)).is_err());
        assert!(LeftCeApproximation::stabilizing(vec![r(1, 4), r(3, 4)], r(3, 4)).is_ok());
        assert!(LeftCeApproximation::stabilizing(vec![r(3, 4), r(1, 4)], r(3, 4)).is_err());
        assert!(LeftCeApproximation::new(vec![r(0, 1)], r(1, 1)).is_err());
    }

    #[test]
    fn table_enumeration_must_match_keys() {
        let e = vec![(r(0, 1), r(0, 1)), (r(1, 2), r(1, 4))];
        assert!(TranslationTable::new(e.clone(), vec![r(0, 1)]).is_err());
        assert!(TranslationTable::new(e.clone(), vec![r(0, 1), r(0, 1), r(1, 2)]).is_err());
        assert!(TranslationTable::new(e.clone(), vec![r(1, 2), r(0, 1)]).is_ok());
        let decreasing = vec![(r(0, 1), r(1, 2)), (r(1, 2), r(1, 4))];
        assert!(TranslationTable::from_pairs(decreasing)
            .unwrap()
            .into_monotone()
            .is_err());
    }

    #[test]
    fn table_serde_round_trip() {
        let t = TranslationTable::new(
            vec![(r(1, 4), r(1, 8)), (r(0, 1), r(0, 1))],
            vec![r(1, 4), r(0, 1)],
        )
        .unwrap()
        .into_monotone()
        .unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"entries":[["0/1","0/1"],["1/4","1/8"]],"enumeration":["1/4","0/1"],"monotone":true}"#
        );
        let back: TranslationTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"entries":[["0/1","1/2"],["1/4","1/8"]],"enumeration":["1/4","0/1"],"monotone":true}"#;
        assert!(serde_json::from_str::<TranslationTable>(bad).is_err());
    }

    #[test]
    fn solovay_identity_and_boundary() {
        let id = TranslationTable::from_pairs(vec![
            (r(0, 1), r(0, 1)),
            (r(1, 4), r(1, 4)),
            (r(3, 8), r(3, 8)),
        ])
        .unwrap();
        let rep = check_solovay_condition(&id, &r(1, 2), &r(1, 2), &r(2, 1)).unwrap();
        assert!(rep.pass);
        let hit =
            TranslationTable::from_pairs(vec![(r(0, 1), r(0, 1)), (r(1, 4), r(1, 2))]).unwrap();
        let rep = check_solovay_condition(&hit, &r(1, 2), &r(1, 2), &r(2, 1)).unwrap();
        assert_eq!(rep.violations, vec![r(1, 4)]);
        assert!(matches!(
            check_solovay_condition(&id, &r(1, 2), &r(3, 8), &r(2, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index_condition_examples() {
        let (a, b) = pair();
        assert!(check_index_condition(&a, &b, &r(1, 1)).unwrap().pass);
        let same = seq(&[(0, 1), (1, 4), (1, 3)], r(1, 2));
        assert!(check_index_condition(&same, &same, &r(2, 1)).unwrap().pass);
        let stalled = seq(&[(0, 1), (0, 1), (0, 1)], r(1, 2));
        let fast = seq(&[(0, 1), (7, 8), (15, 16)], r(31, 32));
        let rep = check_index_condition(&stalled, &fast, &r(1, 1)).unwrap();
        assert_eq!(rep.violations, vec![1, 2]);
        let short = seq(&[(0, 1)], r(1, 2));
        assert!(check_index_condition(&short, &b, &r(1, 1)).is_err());
    }

    #[test]
    fn monotonize_examples() {
        let (a, b) = pair();
        let g = monotonize(&a, &b, &[r(5, 8), r(1, 2), r(0, 1)]).unwrap();
        assert_eq!(g.get(&r(5, 8)), Some(&r(1, 4)));
        assert_eq!(g.get(&r(1, 2)), Some(&r(1, 4)));
        assert_eq!(g.get(&r(0, 1)), Some(&r(0, 1)));
        assert!(g.is_flagged_monotone());
        assert!(
            check_solovay_condition(&g, &a.limit, &b.limit, &r(1, 1))
                .unwrap()
                .pass
        );
        let late = seq(&[(1, 4)], r(1, 2));
        let late_b = seq(&[(1, 4)], r(1, 2));
        assert!(matches!(
            monotonize(&late, &late_b, &[r(1, 8)]),
            Err(Error::UndefinedIndex(_))
        ));
    }

    #[test]
    fn monotonize_can_break_the_constant_between_keys() {
        // index condition holds at n = 0, 1, yet at q = 4/5 the value
        // g(q) = a_0 leaves α − g(q) = 59/100 ≥ c(β − q) = 1/5
        let a = LeftCeApproximation {
            terms: vec![r(0, 1), r(1, 2)],
            limit: r(59, 100),
            stabilizes: false,
        };
        let b = LeftCeApproximation {
            terms: vec![r(0, 1), r(9, 10)],
            limit: r(1, 1),
            stabilizes: false,
        };
        let c = r(1, 1);
        assert!(check_index_condition(&a, &b, &c).unwrap().pass);
        let at_keys = monotonize(&a, &b, &b.terms).unwrap();
        assert!(
            check_solovay_condition(&at_keys, &a.limit, &b.limit, &c)
                .unwrap()
                .pass
        );
        let off_key = monotonize(&a, &b, &[r(4, 5)]).unwrap();
        let rep = check_solovay_condition(&off_key, &a.limit, &b.limit, &c).unwrap();
        assert_eq!(rep.violations, vec![r(4, 5)]);
    }

    #[test]
    fn sandwich_examples() {
        let (a, b) = pair();
        let s = sandwich_functions(&a, &b, &[r(1, 2), r(0, 1), r(3, 4), r(-1, 4)]).unwrap();
        assert_eq!(s.f.get(&r(1, 2)), Some(&r(0, 1)));
        assert_eq!(s.h.get(&r(1, 2)), Some(&r(1, 3)));
        assert_eq!(s.f.get(&r(-1, 4)), Some(&r(0, 1)));
        assert_eq!(s.f.get(&r(3, 4)), Some(&r(1, 4)));
        assert_eq!(s.h_undefined, vec![r(3, 4)]);
        assert!(s.f.get(&r(1, 2)).unwrap() <= &a.terms[1]);
        assert!(&a.terms[1] <= s.h.get(&r(1, 2)).unwrap());
    }

    #[test]
    fn nonmonotone_examples() {
        let (a, b) = pair();
        let out = build_nonmonotone(&a, &b, &r(1, 1), 1, &[r(1, 2), r(5, 8)]).unwrap();
        assert_eq!(out.table.get(&r(5, 8)), Some(&r(1, 3)));
        assert_eq!(out.table.get(&r(1, 3)), Some(&r(1, 12)));
        assert_eq!(out.table.get(&r(1, 2)), Some(&r(1, 4)));
        // n = 2 has no b_3, so its families are truncated
        assert!(out.warnings.iter().any(|w| w.contains("n=2")));
        assert!(
            check_solovay_condition(&out.table, &a.limit, &b.limit, &r(1, 1))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn ratios_and_bound() {
        let id =
            TranslationTable::from_pairs(vec![(r(0, 1), r(0, 1)), (r(1, 4), r(1, 4))]).unwrap();
        let rs = ratio_sequence(&id, &r(1, 2), &r(1, 2), &[r(1, 4), r(0, 1)]).unwrap();
        assert!(rs.iter().all(|(_, x)| x == &Rational::one()));
        assert!(ratio_sequence(&id, &r(1, 2), &r(1, 4), &[r(1, 4)]).is_err());
        assert!(ratio_sequence(&id, &r(1, 2), &r(1, 2), &[r(1, 8)]).is_err());

        let a = seq(&[(0, 1), (1, 4), (1, 3), (3, 8), (2, 5)], r(1, 2));
        let b = seq(&[(0, 1), (1, 4), (1, 2), (5, 8), (3, 4)], r(7, 8));
        let c = r(1, 1);
        assert!(check_index_condition(&a, &b, &c).unwrap().pass);
        let out = build_nonmonotone(&a, &b, &c, 3, &[]).unwrap();
        let fam = out
            .families
            .iter()
            .find(|f| f.n == 1 && f.branch == Branch::Triadic)
            .unwrap();
        assert!(fam.complete);
        let rep = verify_approx_claims(&a, &b, &c, 3).unwrap();
        assert!(rep.pass(), "{:?}", rep.violations);
        assert!(rep.count("approx.dyadic") > 0 && rep.count("approx.triadic") > 0);
        for (k, q) in &fam.points {
            let ratio = &(&a.limit - out.table.get(q).unwrap()) / &(&b.limit - q);
            let bound = triadic_deviation_bound(&a, &b, &c, 1, *k);
            assert!((ratio - &c).abs() <= bound);
        }
    }
}
