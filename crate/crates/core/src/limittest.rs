//! The index-stair construction of the finite test `M(Q)`, its covering
//! functions `k_Q` and `K_Q`, and exact verification of its properties.

use serde::{Deserialize, Serialize};

use crate::approx::TranslationTable;
use crate::error::{Error, Result};
use crate::interval::{FiniteTest, Interval};
use crate::measure::{
    brute_force_count, covering_domain, covering_function_on, measure_via_integral, test_measure,
};
use crate::rational::Rational;
use crate::report::ClaimReport;

/// Default bound on `|Q|` for exhaustive subset maximization.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// `γ(q) = g(q) − cq` and `δ(q) = g(q) − dq` over a translation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaDelta {
    base: TranslationTable,
    c: Rational,
    d: Rational,
    e: Rational,
}

impl GammaDelta {
    /// Requires `c < d` and `d − c < 1`.
    pub fn new(base: TranslationTable, c: Rational, d: Rational) -> Result<Self> {
        let e = &d - &c;
        if !e.is_positive() || e >= Rational::one() {
            return Err(Error::Domain(format!(
                "need c < d and d - c < 1, got c = {c}, d = {d}"
            )));
        }
        Ok(GammaDelta { base, c, d, e })
    }

    pub fn base(&self) -> &TranslationTable {
        &self.base
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// `e = d − c`.
    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn gamma(&self, q: &Rational) -> Result<Rational> {
        Ok(self.base.value(q)? - &self.c * q)
    }

    pub fn delta(&self, q: &Rational) -> Result<Rational> {
        Ok(self.base.value(q)? - &self.d * q)
    }

    /// `I(p, q) = [γ(p) − δ(p), γ(q) − δ(p)]`, canonical empty when
    /// `γ(p) > γ(q)`.
    pub fn interval_pq(&self, p: &Rational, q: &Rational) -> Result<Interval> {
        let dp = self.delta(p)?;
        let iv = Interval::closed(self.gamma(p)? - &dp, self.gamma(q)? - &dp);
        Ok(if iv.is_empty() { Interval::empty() } else { iv })
    }

    /// `S = {q : δ(q) < α̂ − dβ̂}` membership.
    pub fn in_s(&self, q: &Rational, alphahat: &Rational, betahat: &Rational) -> Result<bool> {
        Ok(self.delta(q)? < alphahat - &self.d * betahat)
    }

    /// `T = {q : γ(q) > α̂ − cβ̂}` membership.
    pub fn in_t(&self, q: &Rational, alphahat: &Rational, betahat: &Rational) -> Result<bool> {
        Ok(self.gamma(q)? > alphahat - &self.c * betahat)
    }
}

/// `(t_0, s_1, t_1, …, s_l, t_l)`; `t_0 = −1` when no earlier index has a
/// larger `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexStair {
    pub t0: i64,
    pub pairs: Vec<(usize, usize)>,
}

impl IndexStair {
    pub fn l(&self) -> usize {
        self.pairs.len()
    }

    /// `t_h` for `h = 0..=l`, with `t_0` possibly `−1`.
    pub fn t(&self, h: usize) -> i64 {
        if h == 0 {
            self.t0
        } else {
            self.pairs[h - 1].1 as i64
        }
    }

    pub fn s(&self, h: usize) -> usize {
        self.pairs[h - 1].0
    }
}

/// Largest index in `range` attaining the optimum under `better`.
fn last_optimum<T, F>(vals: &[T], range: std::ops::RangeInclusive<usize>, better: F) -> usize
where
    F: Fn(&T, &T) -> bool,
{
    let mut best = *range.start();
    for x in range {
        if !better(&vals[best], &vals[x]) {
            best = x;
        }
    }
    best
}

/// Index stair of step `j ≥ 1` over values `γ_0..γ_n` and `δ_0..δ_n`.
pub fn stair_of<T: Ord>(gamma: &[T], delta: &[T], j: usize) -> IndexStair {
    assert!(j >= 1 && j < gamma.len(), "step out of range");
    let t0 = (0..j)
        .rev()
        .find(|&z| gamma[z] > gamma[j])
        .map_or(-1, |z| z as i64);
    let mut pairs = Vec::new();
    let mut t_prev = t0;
    while t_prev < j as i64 - 1 {
        let from = (t_prev + 1) as usize;
        let s = last_optimum(delta, from..=j - 1, |best, x| best < x);
        let t = last_optimum(gamma, s..=j - 1, |best, x| best > x);
        pairs.push((s, t));
        t_prev = t as i64;
    }
    IndexStair { t0, pairs }
}

/// Applies the expansions of one step to the right-end map `eps`.
fn apply_stair(eps: &mut [usize], stair: &IndexStair, j: usize) {
    for h in 1..=stair.l() {
        eps[stair.s(h)] = if h == 1 { j } else { stair.t(h - 1) as usize };
    }
}

/// Final right-end map of the construction over ordered values.
pub fn final_right_ends<T: Ord>(gamma: &[T], delta: &[T]) -> Vec<usize> {
    let mut eps: Vec<usize> = (0..gamma.len()).collect();
    for j in 1..gamma.len() {
        let stair = stair_of(gamma, delta, j);
        apply_stair(&mut eps, &stair, j);
    }
    eps
}

/// One step of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MqStep {
    pub step: usize,
    /// Absent at step 0.
    pub stair: Option<IndexStair>,
    /// Right-end index map after this step.
    pub eps: Vec<usize>,
    /// `U_0^j, …, U_n^j`.
    pub u: Vec<Interval>,
    /// `V_i^j = U_i^j \ U_i^{j−1}`; empty at step 0.
    pub v: Vec<Interval>,
    pub nonterminal: Option<usize>,
    pub terminal: Vec<usize>,
}

/// Full record of a construction of `M(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MqTrace {
    pub q: Vec<Rational>,
    pub g: Vec<Rational>,
    pub gamma: Vec<Rational>,
    pub delta: Vec<Rational>,
    pub e: Rational,
    pub steps: Vec<MqStep>,
}

/// Values of `Q` in increasing order with `γ`, `δ` and `e·q`.
#[derive(Debug, Clone)]
struct Frame {
    q: Vec<Rational>,
    g: Vec<Rational>,
    gamma: Vec<Rational>,
    delta: Vec<Rational>,
    eq: Vec<Rational>,
}

impl Frame {
    fn new(gd: &GammaDelta, q: &[Rational]) -> Result<Self> {
        if let Some(w) = q.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!(
                "Q must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        let g = q
            .iter()
            .map(|x| gd.base.value(x).cloned())
            .collect::<Result<Vec<_>>>()?;
        let gamma = q.iter().zip(&g).map(|(x, gx)| gx - gd.c() * x).collect();
        let delta = q.iter().zip(&g).map(|(x, gx)| gx - gd.d() * x).collect();
        let eq = q.iter().map(|x| gd.e() * x).collect();
        Ok(Frame {
            q: q.to_vec(),
            g,
            gamma,
            delta,
            eq,
        })
    }

    fn len(&self) -> usize {
        self.q.len()
    }

    /// `I_{i,k} = [e·q_i, γ_k − δ_i]`.
    fn interval(&self, i: usize, k: usize) -> Interval {
        Interval::closed(self.eq[i].clone(), &self.gamma[k] - &self.delta[i])
    }

    fn sub(&self, idx: &[usize]) -> Frame {
        let pick = |v: &Vec<Rational>| idx.iter().map(|&i| v[i].clone()).collect();
        Frame {
            q: pick(&self.q),
            g: pick(&self.g),
            gamma: pick(&self.gamma),
            delta: pick(&self.delta),
            eq: pick(&self.eq),
        }
    }
}

fn half_open_or_empty(lo: &Rational, hi: &Rational) -> Interval {
    if lo < hi {
        Interval::half_open(lo.clone(), hi.clone())
    } else {
        Interval::empty()
    }
}

fn run_frame(frame: &Frame) -> (FiniteTest, MqTrace) {
    let n1 = frame.len();
    if n1 == 0 {
        let trace = MqTrace {
            q: vec![],
            g: vec![],
            gamma: vec![],
            delta: vec![],
            e: Rational::zero(),
            steps: vec![],
        };
        return (FiniteTest::default(), trace);
    }
    let mut eps: Vec<usize> = (0..n1).collect();
    let u_of =
        |eps: &[usize]| -> Vec<Interval> { (0..n1).map(|i| frame.interval(i, eps[i])).collect() };
    let mut steps = Vec::with_capacity(n1);
    let u0 = u_of(&eps);
    steps.push(MqStep {
        step: 0,
        stair: None,
        eps: eps.clone(),
        v: vec![Interval::empty(); n1],
        u: u0,
        nonterminal: None,
        terminal: vec![],
    });
    for j in 1..n1 {
        let stair = stair_of(&frame.gamma, &frame.delta, j);
        apply_stair(&mut eps, &stair, j);
        let u = u_of(&eps);
        let prev = &steps[j - 1].u;
        let v = prev
            .iter()
            .zip(&u)
            .map(|(a, b)| half_open_or_empty(&a.hi, &b.hi))
            .collect();
        let nonterminal = (stair.l() >= 1).then(|| stair.s(1));
        let terminal = (2..=stair.l()).map(|h| stair.s(h)).collect();
        steps.push(MqStep {
            step: j,
            stair: Some(stair),
            eps: eps.clone(),
            u,
            v,
            nonterminal,
            terminal,
        });
    }
    let test = steps
        .last()
        .map(|s| FiniteTest::new(s.u.clone()))
        .unwrap_or_default();
    let trace = MqTrace {
        q: frame.q.clone(),
        g: frame.g.clone(),
        gamma: frame.gamma.clone(),
        delta: frame.delta.clone(),
        e: Rational::zero(),
        steps,
    };
    (test, trace)
}

/// Runs the construction on the sorted key list `q` and returns
/// `M(Q) = (U_0^n, …, U_n^n)` with its trace. `M(∅)` is the empty test.
pub fn build_mq(gd: &GammaDelta, q: &[Rational]) -> Result<(FiniteTest, MqTrace)> {
    let frame = Frame::new(gd, q)?;
    let (test, mut trace) = run_frame(&frame);
    trace.e = gd.e().clone();
    Ok((test, trace))
}

/// Index stair of step `j` of the construction on `q`.
pub fn index_stair(gd: &GammaDelta, q: &[Rational], j: usize) -> Result<IndexStair> {
    let frame = Frame::new(gd, q)?;
    if j == 0 || j >= frame.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: frame.len().saturating_sub(1),
        });
    }
    Ok(stair_of(&frame.gamma, &frame.delta, j))
}

fn count_at(test: &FiniteTest, x: &Rational) -> u64 {
    if test.nonempty().next().is_none() {
        return 0;
    }
    let (lo, hi) = covering_domain(test);
    covering_function_on(test, &lo, &hi).eval(x).unwrap_or(0)
}

/// `k_Q(x)`: the covering function of `M(Q)` at `x`.
pub fn cover_k(gd: &GammaDelta, q: &[Rational], x: &Rational) -> Result<u64> {
    let (test, _) = build_mq(gd, q)?;
    Ok(count_at(&test, x))
}

/// `K_Q(x) = max_{H ⊆ Q} k_H(x)` by a direct loop over all subsets.
pub fn cover_all(gd: &GammaDelta, q: &[Rational], x: &Rational, cap: usize) -> Result<u64> {
    if q.len() > cap {
        return Err(Error::Resource(format!(
            "|Q| = {} exceeds the subset cap {cap}",
            q.len()
        )));
    }
    let frame = Frame::new(gd, q)?;
    let mut best = 0;
    for mask in 1u32..(1u32 << q.len()) {
        let idx: Vec<usize> = (0..q.len()).filter(|i| mask & (1 << i) != 0).collect();
        let (test, _) = run_frame(&frame.sub(&idx));
        best = best.max(brute_force_count(&test, x));
    }
    Ok(best)
}

/// Every endpoint any subset test can have, `{e·q_i} ∪ {γ_k − δ_i} ∪ {0, e}`,
/// sorted without repetition.
fn universal_breakpoints(frame: &Frame, e: &Rational) -> Vec<Rational> {
    let n1 = frame.len();
    let mut pts = vec![Rational::zero(), e.clone()];
    pts.extend(frame.eq.iter().cloned());
    for k in 0..n1 {
        for i in 0..n1 {
            pts.push(&frame.gamma[k] - &frame.delta[i]);
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Breakpoints interleaved with the midpoint of each gap and one point past
/// the last breakpoint; `interior[x]` marks the non-breakpoints.
fn interleave(breaks: &[Rational]) -> (Vec<Rational>, Vec<bool>) {
    let mut pts = Vec::with_capacity(2 * breaks.len() + 1);
    let mut interior = Vec::with_capacity(2 * breaks.len() + 1);
    for (i, b) in breaks.iter().enumerate() {
        if i > 0 {
            pts.push(breaks[i - 1].midpoint(b));
            interior.push(true);
        }
        pts.push(b.clone());
        interior.push(false);
    }
    if let Some(last) = breaks.last() {
        pts.push(last + Rational::one());
        interior.push(true);
    }
    (pts, interior)
}

/// Dense ranks of `vals` that preserve their order.
fn ranks(vals: &[Rational]) -> Vec<u32> {
    let mut sorted: Vec<&Rational> = vals.iter().collect();
    sorted.sort();
    sorted.dedup();
    vals.iter()
        .map(|v| sorted.binary_search(&v).expect("present") as u32)
        .collect()
}

/// `k_Q` and `K_Q` at a set of sample points that is exhaustive for every
/// subset: the universal breakpoints, the midpoints between them, and one
/// point to their right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KProfile {
    pub samples: Vec<Rational>,
    /// True for points strictly inside a segment between breakpoints.
    pub interior: Vec<bool>,
    pub k: Vec<u64>,
    pub big_k: Vec<u64>,
}

impl KProfile {
    pub fn new(gd: &GammaDelta, q: &[Rational], cap: usize) -> Result<Self> {
        if q.len() > cap {
            return Err(Error::Resource(format!(
                "|Q| = {} exceeds the subset cap {cap}",
                q.len()
            )));
        }
        let frame = Frame::new(gd, q)?;
        let n1 = frame.len();
        let (samples, interior) = interleave(&universal_breakpoints(&frame, gd.e()));
        let pos = |x: &Rational| samples.binary_search(x).expect("breakpoint sampled");
        let pos_lo: Vec<usize> = frame.eq.iter().map(pos).collect();
        let pos_hi: Vec<Vec<usize>> = (0..n1)
            .map(|k| {
                (0..n1)
                    .map(|i| pos(&(&frame.gamma[k] - &frame.delta[i])))
                    .collect()
            })
            .collect();
        let gr = ranks(&frame.gamma);
        let dr = ranks(&frame.delta);

        let ns = samples.len();
        let mut big_k = vec![0u64; ns];
        let mut k_full = vec![0u64; ns];
        let mut diff = vec![0i64; ns + 1];
        let mut sub_g = Vec::with_capacity(n1);
        let mut sub_d = Vec::with_capacity(n1);
        let mut idx = Vec::with_capacity(n1);
        for mask in 1u32..(1u32 << n1) {
            idx.clear();
            idx.extend((0..n1).filter(|i| mask & (1 << i) != 0));
            sub_g.clear();
            sub_g.extend(idx.iter().map(|&i| gr[i]));
            sub_d.clear();
            sub_d.extend(idx.iter().map(|&i| dr[i]));
            let eps = final_right_ends(&sub_g, &sub_d);
            diff.iter_mut().for_each(|d| *d = 0);
            for (a, &i) in idx.iter().enumerate() {
                let lo = pos_lo[i];
                let hi = pos_hi[idx[eps[a]]][i];
                if lo <= hi {
                    diff[lo] += 1;
                    diff[hi + 1] -= 1;
                }
            }
            let mut acc = 0i64;
            for x in 0..ns {
                acc += diff[x];
                big_k[x] = big_k[x].max(acc as u64);
                if mask == (1u32 << n1) - 1 {
                    k_full[x] = acc as u64;
                }
            }
        }
        Ok(KProfile {
            samples,
            interior,
            k: k_full,
            big_k,
        })
    }
}

impl KProfile {
    /// `(k_Q(x), K_Q(x))` at any `x`, read off the sample that shares its
    /// segment between breakpoints.
    pub fn eval(&self, x: &Rational) -> (u64, u64) {
        let at = |i: usize| (self.k[i], self.big_k[i]);
        match self.samples.binary_search(x) {
            Ok(i) => at(i),
            Err(0) => (0, 0),
            Err(i) if i == self.samples.len() => at(i - 1),
            // the neighbors are a breakpoint and an interior sample
            Err(i) => at(if self.interior[i] { i } else { i - 1 }),
        }
    }
}

/// Covering counts of `test` at sorted `samples`.
fn profile_of(test: &FiniteTest, samples: &[Rational]) -> Vec<u64> {
    let mut diff = vec![0i64; samples.len() + 1];
    for iv in test.nonempty() {
        let lo = samples.partition_point(|x| !iv.contains(x) && x < &iv.lo);
        let hi = samples.partition_point(|x| x <= &iv.hi);
        if lo < hi {
            diff[lo] += 1;
            diff[hi] -= 1;
        }
    }
    let mut acc = 0i64;
    diff[..samples.len()]
        .iter()
        .map(|d| {
            acc += d;
            acc as u64
        })
        .collect()
}

/// Checks the structural properties of `M(Q)`. Claim ids:
/// `limit.a` stair shape, `limit.b` nesting and early stability, `limit.c`
/// finality of terminal expansions, `limit.d` disjoint increments with the
/// exact length sum, `limit.e` the measure bound, `limit.f` adding the
/// largest key raises coverage by at most one, `limit.g` `K ≤ k + 1` on
/// `[0, e]`, `limit.h` `K = k` right of `e·max Q`, `limit.i` the strict
/// prefix increase, `limit.j` stability after a late increase.
///
/// The `K`-based checks `g` and `h` run only when `subset_cap` is given and
/// `|Q|` does not exceed it.
pub fn verify_limit_claims(
    gd: &GammaDelta,
    q: &[Rational],
    subset_cap: Option<usize>,
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new();
    let frame = Frame::new(gd, q)?;
    if frame.len() == 0 {
        return Ok(report);
    }
    let (test, trace) = run_frame(&frame);
    check_trace(&frame, &trace, &mut report);
    check_measure(&frame, &test, &mut report);

    let n = frame.len() - 1;
    let breaks = universal_breakpoints(&frame, gd.e());
    let (samples, interior) = interleave(&breaks);
    let prefix_profiles: Vec<Vec<u64>> = (0..=n)
        .map(|z| {
            profile_of(
                &run_frame(&frame.sub(&(0..=z).collect::<Vec<_>>())).0,
                &samples,
            )
        })
        .collect();
    let k_q = &prefix_profiles[n];

    // coverage rises by at most one when the largest key is added
    if n >= 1 {
        let k_less = &prefix_profiles[n - 1];
        // at the breakpoint e·max Q the new point interval can add a second unit
        for (x, p) in samples.iter().enumerate().filter(|(x, _)| interior[*x]) {
            let (lo, hi) = (k_less[x], k_q[x]);
            report.check("limit.f", lo <= hi && hi <= lo + 1, || {
                format!("x={p}: k without max = {lo}, k = {hi}")
            });
        }
    }

    check_strict_prefix_increase(gd, &frame, &samples, &prefix_profiles, &mut report);
    check_late_increase_is_last(
        gd,
        &frame,
        &samples,
        &interior,
        &prefix_profiles,
        &mut report,
    );

    if let Some(cap) = subset_cap {
        if frame.len() <= cap {
            let prof = KProfile::new(gd, q, cap)?;
            debug_assert_eq!(prof.samples, samples);
            let e = gd.e();
            let right_of = &frame.eq[n];
            for x in 0..samples.len() {
                let p = &samples[x];
                let (small, big) = (prof.k[x], prof.big_k[x]);
                report.check("limit.k-profile", small == k_q[x], || {
                    format!("x={p}: fast k = {small}, direct k = {}", k_q[x])
                });
                if !prof.interior[x] {
                    continue;
                }
                if !p.is_negative() && p <= e {
                    report.check("limit.g", big <= small + 1, || {
                        format!("x={p}: K = {big}, k = {small}")
                    });
                }
                if p > right_of {
                    report.check("limit.h", big == small, || {
                        format!("x={p} right of e*max Q: K = {big}, k = {small}")
                    });
                }
            }
        }
    }
    Ok(report)
}

fn check_trace(frame: &Frame, trace: &MqTrace, report: &mut ClaimReport) {
    let n1 = frame.len();
    let n = n1 - 1;
    let (gamma, delta) = (&frame.gamma, &frame.delta);
    for step in &trace.steps[1..] {
        let j = step.step;
        let st = step.stair.as_ref().expect("stair at j >= 1");
        let tag = |s: String| format!("step {j}: {s}");
        // stair shape
        if st.t0 >= 0 {
            report.check("limit.a", gamma[j] < gamma[st.t0 as usize], || {
                tag(format!("gamma_j not below gamma at t0 = {}", st.t0))
            });
        }
        if st.l() == 0 {
            report.check("limit.a", st.t0 == j as i64 - 1, || {
                tag(format!("l = 0 but t0 = {}", st.t0))
            });
        } else {
            let mut chain: Vec<i64> = vec![st.t0];
            for &(s, t) in &st.pairs {
                chain.push(s as i64);
                chain.push(t as i64);
            }
            let l = st.l();
            let mut ok = chain.last() == Some(&(j as i64 - 1));
            for w in 0..chain.len() - 1 {
                let last_pair = w == chain.len() - 2;
                ok &= if last_pair {
                    chain[w] <= chain[w + 1]
                } else {
                    chain[w] < chain[w + 1]
                };
            }
            report.check("limit.a", ok, || tag(format!("positions {chain:?}")));
            let mut vals_ok = true;
            for h in 1..l {
                vals_ok &= delta[st.s(h)] < delta[st.s(h + 1)];
                vals_ok &= gamma[st.t(h + 1) as usize] < gamma[st.t(h) as usize];
            }
            // the gap between the last s and t is e·q, which vanishes at q = 0
            let tl = st.t(l) as usize;
            vals_ok &= if frame.eq[tl].is_zero() {
                delta[st.s(l)] <= gamma[tl]
            } else {
                delta[st.s(l)] < gamma[tl]
            };
            vals_ok &= gamma[st.t(1) as usize] <= gamma[j];
            report.check("limit.a", vals_ok, || {
                tag(format!("values along {chain:?}"))
            });
        }

        // nesting, constant left ends, early stability, right-end bound
        let prev = &trace.steps[j - 1];
        for i in 0..n1 {
            let (a, b) = (&prev.u[i], &step.u[i]);
            let ok =
                a.lo == frame.eq[i] && b.lo == frame.eq[i] && a.hi <= b.hi && a.is_subset_of(b);
            report.check("limit.b", ok, || tag(format!("U_{i} shrinks or moves")));
            if j <= i {
                report.check("limit.b", a == b, || {
                    tag(format!("U_{i} changed before step {i}"))
                });
            }
            report.check("limit.b", step.eps[i] <= j.max(i), || {
                tag(format!(
                    "right end {} of U_{i} is beyond the step",
                    step.eps[i]
                ))
            });
        }
        // expanded intervals before the step end at gamma of t_h
        for h in 1..=st.l() {
            let s = st.s(h);
            let want = &gamma[st.t(h) as usize] - &delta[s];
            report.check("limit.b", prev.u[s].hi == want, || {
                tag(format!(
                    "U_{s} before the step does not end at gamma_t{h} - delta_s{h}"
                ))
            });
        }

        // terminal expansions are final
        for &s in &step.terminal {
            report.check("limit.c", trace.steps[n].eps[s] == step.eps[s], || {
                tag(format!("terminally expanded U_{s} changes later"))
            });
        }

        // increments
        let live: Vec<&Interval> = step.v.iter().filter(|v| !v.is_empty()).collect();
        let mut disjoint = true;
        for a in 0..live.len() {
            for b in a + 1..live.len() {
                disjoint &= !live[a].intersects(live[b]);
            }
        }
        report.check("limit.d", disjoint, || tag("increments overlap".into()));
        let total: Rational = step.v.iter().map(Interval::measure).sum();
        let rise = &gamma[j] - &gamma[j - 1];
        let want = if rise.is_positive() {
            rise
        } else {
            Rational::zero()
        };
        report.check("limit.d", total == want, || {
            tag(format!("increments sum to {total}, expected {want}"))
        });
        for i in 0..n1 {
            let grows = prev.u[i].measure() + step.v[i].measure() == step.u[i].measure();
            let outside = !step.v[i].intersects(&prev.u[i]);
            report.check("limit.d", grows && outside, || {
                tag(format!("U_{i} is not U_{i} before the step plus V_{i}"))
            });
        }
    }
}

fn check_measure(frame: &Frame, test: &FiniteTest, report: &mut ClaimReport) {
    let by_sum = test_measure(test);
    let by_integral = measure_via_integral(test);
    let bound = frame.g.last().expect("nonempty") - &frame.g[0];
    report.check("limit.e", by_sum == by_integral, || {
        format!("sum of lengths {by_sum} differs from the integral {by_integral}")
    });
    report.check("limit.e", by_sum <= bound, || {
        format!("measure {by_sum} exceeds g(max Q) - g(min Q) = {bound}")
    });
}

fn check_strict_prefix_increase(
    gd: &GammaDelta,
    frame: &Frame,
    samples: &[Rational],
    prefix: &[Vec<u64>],
    report: &mut ClaimReport,
) {
    let n1 = frame.len();
    let e = gd.e();
    for i in 0..n1 {
        for j in i + 1..n1 {
            for k in j + 1..n1 {
                let a = &frame.gamma[i] - &frame.delta[j];
                let b = &frame.gamma[k] - &frame.delta[j];
                let upper = if a < b { a } else { b };
                for (x, p) in samples.iter().enumerate() {
                    // x = e·p with q_k < p ≤ 1
                    if p <= &frame.eq[k] || p > e || p >= &upper {
                        continue;
                    }
                    let (lo, hi) = (prefix[i][x], prefix[k][x]);
                    report.check("limit.i", lo < hi, || {
                        format!("i={i} j={j} k={k} x={p}: k_Qi = {lo}, k_Qk = {hi}")
                    });
                }
            }
        }
    }
}

fn check_late_increase_is_last(
    gd: &GammaDelta,
    frame: &Frame,
    samples: &[Rational],
    interior: &[bool],
    prefix: &[Vec<u64>],
    report: &mut ClaimReport,
) {
    let n = frame.len() - 1;
    let _ = gd;
    for x in 1..=n {
        for (pos, p) in samples.iter().enumerate() {
            if !interior[pos] || p.is_negative() || p > &frame.eq[x] {
                continue;
            }
            if prefix[x - 1][pos] == prefix[x][pos] {
                continue;
            }
            let stays = (x..=n).all(|z| prefix[z][pos] == prefix[x][pos]);
            report.check("limit.j", stays, || {
                format!("x={x} point {p}: coverage changes again after the increase")
            });
        }
    }
}

/// Greedily picks `r_0 < r_1 < … < r_{2k}` from `pool` with `r_{2i} ∈ T`,
/// `r_{2i+1} ∈ S` and `γ(r_{2i+1}) < γ(r_{2i+2}) < γ(r_{2i})`, always taking
/// the least admissible candidate. Returns `None` when the pool runs out.
pub fn alternating_scenario(
    gd: &GammaDelta,
    alphahat: &Rational,
    betahat: &Rational,
    pool: &[Rational],
    k: usize,
) -> Result<Option<Vec<Rational>>> {
    if let Some(q) = pool.iter().find(|q| *q >= betahat) {
        return Err(Error::Precondition(format!(
            "pool key {q} is not below {betahat}"
        )));
    }
    let mut sorted = pool.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut info = Vec::with_capacity(sorted.len());
    for q in &sorted {
        info.push((
            gd.in_s(q, alphahat, betahat)?,
            gd.in_t(q, alphahat, betahat)?,
            gd.gamma(q)?,
        ));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(2 * k + 1);
    let Some(first) = (0..sorted.len()).find(|&x| info[x].1) else {
        return Ok(None);
    };
    chosen.push(first);
    for _ in 0..k {
        let last_t = *chosen.last().expect("nonempty");
        let Some(s) = (last_t + 1..sorted.len()).find(|&x| info[x].0) else {
            return Ok(None);
        };
        let Some(t) = (s + 1..sorted.len())
            .find(|&x| info[x].1 && info[s].2 < info[x].2 && info[x].2 < info[last_t].2)
        else {
            return Ok(None);
        };
        chosen.push(s);
        chosen.push(t);
    }
    Ok(Some(
        chosen.into_iter().map(|x| sorted[x].clone()).collect(),
    ))
}

/// Checks an alternating selection `h`: the stair of every step `2i + 2` is
/// `(2i, 2i + 1, 2i + 1)` and `k_H(e·β̂) ≥ (|h| − 1)/2`.
pub fn verify_alternating(
    gd: &GammaDelta,
    betahat: &Rational,
    h: &[Rational],
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new();
    let (test, trace) = build_mq(gd, h)?;
    let k = h.len().saturating_sub(1) / 2;
    for i in 0..k {
        let j = 2 * i + 2;
        let st = trace.steps[j].stair.as_ref().expect("stair");
        let want = IndexStair {
            t0: 2 * i as i64,
            pairs: vec![(2 * i + 1, 2 * i + 1)],
        };
        report.check("alternating.stair", st == &want, || {
            format!("step {j}: stair {st:?}, expected {want:?}")
        });
    }
    let x = gd.e() * betahat;
    let cov = brute_force_count(&test, &x);
    report.check("alternating.cover", cov >= k as u64, || {
        format!("k_H(e*betahat) = {cov} < {k}")
    });
    Ok(report)
}
