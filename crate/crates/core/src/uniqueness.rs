//! Interval pairs from two translation tables, the greedy disjoint selection
//! over them, and the per-key coverage check for `e·β̂`.

use serde::{Deserialize, Serialize};

use crate::approx::TranslationTable;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::report::ClaimReport;

/// Two monotone tables `f`, `g` over a shared enumeration, with constants
/// `c < d` and `e = d − c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedTables {
    f: TranslationTable,
    g: TranslationTable,
    c: Rational,
    d: Rational,
    e: Rational,
    enumeration: Vec<Rational>,
}

impl PairedTables {
    /// The shared enumeration is `f`'s enumeration restricted to keys of `g`.
    pub fn new(f: TranslationTable, g: TranslationTable, c: Rational, d: Rational) -> Result<Self> {
        if c >= d {
            return Err(Error::Domain(format!("need c < d, got c = {c}, d = {d}")));
        }
        for (name, t) in [("f", &f), ("g", &g)] {
            if !t.is_monotone() {
                return Err(Error::Precondition(format!("table {name} is not monotone")));
            }
        }
        let enumeration = f
            .enumeration()
            .iter()
            .filter(|q| g.contains_key(q))
            .cloned()
            .collect();
        let e = &d - &c;
        Ok(PairedTables {
            f,
            g,
            c,
            d,
            e,
            enumeration,
        })
    }

    pub fn f(&self) -> &TranslationTable {
        &self.f
    }

    pub fn g(&self) -> &TranslationTable {
        &self.g
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn enumeration(&self) -> &[Rational] {
        &self.enumeration
    }
}

/// One member of `D` with its two intervals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DEntry {
    /// Position in the list of `D` members.
    pub index: usize,
    pub q: Rational,
    /// `I_q = [f(q), g(q)]`.
    pub i: Interval,
    /// `Ũ_q = [e·q, e·q + g(q) − f(q)]`.
    pub u: Interval,
}

/// Keys with `f(q) < g(q)` in enumeration order.
pub fn enumerate_d(pt: &PairedTables) -> Vec<DEntry> {
    let mut out = Vec::new();
    for q in &pt.enumeration {
        let (fq, gq) = (pt.f.get(q).expect("shared"), pt.g.get(q).expect("shared"));
        if fq < gq {
            let lo = &pt.e * q;
            let hi = &lo + gq - fq;
            out.push(DEntry {
                index: out.len(),
                q: q.clone(),
                i: Interval::closed(fq.clone(), gq.clone()),
                u: Interval::closed(lo, hi),
            });
        }
    }
    out
}

/// The greedily selected members of `D`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub selected: Vec<usize>,
    pub entries: Vec<DEntry>,
}

impl Selection {
    /// `Σ |Ũ_q|` over the selected entries.
    pub fn u_total(&self) -> Rational {
        self.entries.iter().map(|e| e.u.measure()).sum()
    }

    pub fn i_total(&self) -> Rational {
        self.entries.iter().map(|e| e.i.measure()).sum()
    }
}

/// Takes entry 0 and then every entry whose `I` interval is disjoint, as a
/// closed set, from all earlier selected ones.
pub fn greedy_select(d_list: &[DEntry]) -> Selection {
    let mut sel = Selection::default();
    for entry in d_list {
        if sel.entries.iter().all(|s| !s.i.intersects(&entry.i)) {
            sel.selected.push(entry.index);
            sel.entries.push(entry.clone());
        }
    }
    sel
}

/// Result of checking `e·q < e·β̂ < e·q + g(q) − f(q)` on `[p, β̂)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub point: Rational,
    /// Keys of `D` in `[p, β̂)` that were checked.
    pub checked: Vec<Rational>,
    /// Checked keys whose `Ũ_q` misses `e·β̂`.
    pub failures: Vec<Rational>,
    /// Selected indices whose `Ũ` contains `e·β̂`.
    pub covering_selected: Vec<usize>,
}

impl CoverageReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Validates the gap inequalities `(α̂ − g(q))/(β̂ − q) < c` and
/// `d < (α̂ − f(q))/(β̂ − q)` at every shared key in `[p, β̂)`, then checks
/// that `e·β̂` lies in `Ũ_q` for each of them.
pub fn coverage_check(
    pt: &PairedTables,
    selection: &Selection,
    alphahat: &Rational,
    betahat: &Rational,
    p: &Rational,
) -> Result<CoverageReport> {
    let point = &pt.e * betahat;
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    let mut keys: Vec<&Rational> = pt
        .enumeration
        .iter()
        .filter(|q| *q >= p && *q < betahat)
        .collect();
    keys.sort();
    for q in keys {
        let (fq, gq) = (pt.f.value(q)?, pt.g.value(q)?);
        let width = betahat - q;
        let upper_ok = alphahat - gq < &pt.c * &width;
        let lower_ok = &pt.d * &width < alphahat - fq;
        if !(upper_ok && lower_ok) {
            return Err(Error::Precondition(format!(
                "gap inequalities fail at q = {q}"
            )));
        }
        let lo = &pt.e * q;
        let hi = &lo + gq - fq;
        checked.push(q.clone());
        if !(lo < point && point < hi) {
            failures.push(q.clone());
        }
    }
    let covering_selected = selection
        .entries
        .iter()
        .filter(|e| e.u.contains(&point))
        .map(|e| e.index)
        .collect();
    Ok(CoverageReport {
        point,
        checked,
        failures,
        covering_selected,
    })
}

/// Checks a selection. Claim ids: `uniqueness.disjoint` pairwise disjoint
/// selected `I` intervals, `uniqueness.length` `|Ũ_q| = |I_q|` per entry,
/// `uniqueness.total` `Σ|Ũ| ≤ 1`.
pub fn verify_selection(selection: &Selection) -> ClaimReport {
    let mut report = ClaimReport::new();
    let entries = &selection.entries;
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            let (x, y) = (&entries[a], &entries[b]);
            report.check("uniqueness.disjoint", !x.i.intersects(&y.i), || {
                format!("selected I intervals of {} and {} meet", x.index, y.index)
            });
        }
    }
    for e in entries {
        report.check("uniqueness.length", e.u.measure() == e.i.measure(), || {
            format!(
                "entry {}: |U| = {}, |I| = {}",
                e.index,
                e.u.measure(),
                e.i.measure()
            )
        });
    }
    let total = selection.u_total();
    report.check("uniqueness.total", total <= Rational::one(), || {
        format!("selected U lengths sum to {total}")
    });
    report
}
