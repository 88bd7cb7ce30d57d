//! Hand-traced fixtures with their exact expected values.

use limitlab::approx::{
    build_nonmonotone, check_index_condition, monotonize, sandwich_functions, verify_approx_claims,
    LeftCeApproximation,
};
use limitlab::boundtest::{
    build_tin, interval_ikm, locate_witness, stair_indices, union_yin, verify_bound_claims,
    SortedPrefix,
};
use limitlab::limittest::{
    alternating_scenario, build_mq, cover_all, cover_k, index_stair, verify_alternating,
    verify_limit_claims, GammaDelta, IndexStair,
};
use limitlab::measure::{test_measure, union_measure};
use limitlab::report::ClaimReport;
use limitlab::scenario::Scenario;
use limitlab::uniqueness::{enumerate_d, greedy_select, DEntry, PairedTables};
use limitlab::{Interval, Rational, Result};

use crate::generate::alternating_pool;
use crate::report::{digest_of, records_from, CheckRecord};

pub const BOUND_TRACE: &str = include_str!("../fixtures/bound_trace.json");
pub const MQ_TRACE: &str = include_str!("../fixtures/mq_trace.json");
pub const MQ_GAMMA_DECREASING: &str = include_str!("../fixtures/mq_gamma_decreasing.json");
pub const WITNESS: &str = include_str!("../fixtures/witness.json");
pub const APPROX_PAIR: &str = include_str!("../fixtures/approx_pair.json");

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// Records `got == want` under `claim`.
fn expect_eq<T: PartialEq + std::fmt::Debug>(
    rep: &mut ClaimReport,
    claim: &str,
    what: &str,
    got: T,
    want: T,
) {
    let ok = got == want;
    rep.check(claim, ok, || {
        format!("{what}: got {got:?}, expected {want:?}")
    });
}

fn bound_trace(rep: &mut ClaimReport) -> Result<()> {
    let claim = "fixture.bound-trace";
    let sc = Scenario::from_json(BOUND_TRACE)?;
    let prefix = SortedPrefix::new(&sc.g, 2)?;
    expect_eq(
        rep,
        claim,
        "I(0,1)",
        interval_ikm(&prefix, 0, 1, 0)?,
        Interval::closed(r(1, 4), r(3, 8)),
    );
    for (k, m) in [(0, 2), (1, 2), (1, 1)] {
        let iv = interval_ikm(&prefix, k, m, 0)?;
        expect_eq(
            rep,
            claim,
            &format!("I({k},{m}) empty"),
            iv.is_empty(),
            true,
        );
    }
    let t = build_tin(&prefix, 0);
    let shape: Vec<bool> = t.iter().map(Interval::is_empty).collect();
    expect_eq(
        rep,
        claim,
        "T emptiness pattern",
        shape,
        vec![false, true, true],
    );
    let union = union_yin(&prefix, 0);
    expect_eq(
        rep,
        claim,
        "Y",
        union.clone(),
        vec![Interval::closed(r(1, 4), r(3, 8))],
    );
    expect_eq(rep, claim, "mu(Y)", union_measure(&union), r(1, 8));
    expect_eq(
        rep,
        claim,
        "stair",
        stair_indices(&prefix, 0).indices,
        vec![0, 2],
    );
    rep.merge(verify_bound_claims(&sc.g, 2, 2)?);
    Ok(())
}

fn witness(rep: &mut ClaimReport) -> Result<()> {
    let claim = "fixture.witness";
    let sc = Scenario::from_json(WITNESS)?;
    let w = locate_witness(&sc.g, &sc.alpha, &sc.beta, 0, &r(1, 2), &r(23, 32))?;
    expect_eq(
        rep,
        claim,
        "witness",
        w.map(|w| (w.k, w.m, w.contains_beta)),
        Some((1, 2, true)),
    );
    let none = locate_witness(&sc.g, &sc.alpha, &sc.beta, 0, &r(0, 1), &r(23, 32))?;
    expect_eq(rep, claim, "no violation at 0", none, None);
    Ok(())
}

fn mq_trace(rep: &mut ClaimReport, cap: usize) -> Result<()> {
    let claim = "fixture.mq-trace";
    let sc = Scenario::from_json(MQ_TRACE)?;
    let gd = GammaDelta::new(sc.g.clone(), sc.c.clone(), sc.d.clone())?;
    let q = vec![r(0, 1), r(1, 4), r(1, 2)];
    expect_eq(
        rep,
        claim,
        "I(0,1/4)",
        gd.interval_pq(&r(0, 1), &r(1, 4))?,
        Interval::closed(r(0, 1), r(3, 8)),
    );
    expect_eq(
        rep,
        claim,
        "stair 1",
        index_stair(&gd, &q, 1)?,
        IndexStair {
            t0: -1,
            pairs: vec![(0, 0)],
        },
    );
    expect_eq(
        rep,
        claim,
        "stair 2",
        index_stair(&gd, &q, 2)?,
        IndexStair {
            t0: -1,
            pairs: vec![(0, 1)],
        },
    );
    let (test, trace) = build_mq(&gd, &q)?;
    expect_eq(
        rep,
        claim,
        "M(Q)",
        test.intervals.clone(),
        vec![
            Interval::closed(r(0, 1), r(1, 2)),
            Interval::point(r(1, 8)),
            Interval::point(r(1, 4)),
        ],
    );
    expect_eq(
        rep,
        claim,
        "V_0^1",
        trace.steps[1].v[0].clone(),
        Interval::half_open(r(0, 1), r(3, 8)),
    );
    expect_eq(
        rep,
        claim,
        "V_0^2",
        trace.steps[2].v[0].clone(),
        Interval::half_open(r(3, 8), r(1, 2)),
    );
    let others_empty = trace.steps.iter().all(|s| {
        s.v.iter()
            .enumerate()
            .all(|(i, v)| (i == 0 && s.step > 0) || v.is_empty())
    });
    expect_eq(rep, claim, "other V empty", others_empty, true);
    expect_eq(rep, claim, "mu", test_measure(&test), r(1, 2));
    expect_eq(rep, claim, "k(1/8)", cover_k(&gd, &q, &r(1, 8))?, 2);
    expect_eq(rep, claim, "k(3/16)", cover_k(&gd, &q, &r(3, 16))?, 1);
    expect_eq(rep, claim, "K(1/8)", cover_all(&gd, &q, &r(1, 8), cap)?, 2);
    expect_eq(
        rep,
        claim,
        "K(3/16)",
        cover_all(&gd, &q, &r(3, 16), cap)?,
        1,
    );
    expect_eq(
        rep,
        claim,
        "K on empty Q",
        cover_all(&gd, &[], &r(1, 8), cap)?,
        0,
    );
    rep.merge(verify_limit_claims(&gd, &q, Some(cap))?);
    Ok(())
}

fn mq_gamma_decreasing(rep: &mut ClaimReport, cap: usize) -> Result<()> {
    let claim = "fixture.mq-gamma-decreasing";
    let sc = Scenario::from_json(MQ_GAMMA_DECREASING)?;
    let gd = GammaDelta::new(sc.g.clone(), sc.c.clone(), sc.d.clone())?;
    let q = vec![r(0, 1), r(1, 4)];
    expect_eq(rep, claim, "gamma", gd.gamma(&r(1, 4))?, r(-1, 4));
    expect_eq(
        rep,
        claim,
        "stair 1",
        index_stair(&gd, &q, 1)?,
        IndexStair {
            t0: 0,
            pairs: vec![],
        },
    );
    let (test, trace) = build_mq(&gd, &q)?;
    let degenerate = test
        .iter()
        .all(|iv| !iv.is_empty() && iv.measure().is_zero());
    expect_eq(rep, claim, "degenerate intervals", degenerate, true);
    let v_total: Rational = trace.steps[1].v.iter().map(Interval::measure).sum();
    expect_eq(rep, claim, "sum V^1", v_total, Rational::zero());
    rep.merge(verify_limit_claims(&gd, &q, Some(cap))?);
    Ok(())
}

fn approx_examples(rep: &mut ClaimReport) -> Result<()> {
    let claim = "fixture.approx";
    // the limit 1 of b lies outside [0, 1), so the literal bypasses validation
    let a = LeftCeApproximation {
        terms: vec![r(0, 1), r(1, 4), r(1, 3)],
        limit: r(1, 2),
        stabilizes: false,
    };
    let b = LeftCeApproximation {
        terms: vec![r(0, 1), r(1, 2), r(3, 4)],
        limit: r(1, 1),
        stabilizes: false,
    };
    let c = r(1, 1);
    expect_eq(
        rep,
        claim,
        "index condition",
        check_index_condition(&a, &b, &c)?.pass,
        true,
    );
    let mono = monotonize(&a, &b, &[r(5, 8), r(1, 2), r(0, 1)])?;
    expect_eq(rep, claim, "g(5/8)", mono.value(&r(5, 8))?.clone(), r(1, 4));
    expect_eq(rep, claim, "g(1/2)", mono.value(&r(1, 2))?.clone(), r(1, 4));
    expect_eq(rep, claim, "g(0)", mono.value(&r(0, 1))?.clone(), r(0, 1));
    let sw = sandwich_functions(&a, &b, &[r(1, 2)])?;
    expect_eq(rep, claim, "f(1/2)", sw.f.value(&r(1, 2))?.clone(), r(0, 1));
    expect_eq(rep, claim, "h(1/2)", sw.h.value(&r(1, 2))?.clone(), r(1, 3));
    let nm = build_nonmonotone(&a, &b, &c, 1, &[r(1, 2)])?;
    expect_eq(
        rep,
        claim,
        "dyadic g(5/8)",
        nm.table.value(&r(5, 8))?.clone(),
        r(1, 3),
    );
    expect_eq(
        rep,
        claim,
        "triadic g(1/3)",
        nm.table.value(&r(1, 3))?.clone(),
        r(1, 12),
    );
    expect_eq(
        rep,
        claim,
        "fallback g(1/2)",
        nm.table.value(&r(1, 2))?.clone(),
        r(1, 4),
    );

    let sc = Scenario::from_json(APPROX_PAIR)?;
    rep.merge(verify_approx_claims(
        &sc.approx_a()?,
        &sc.approx_b()?,
        &sc.c,
        3,
    )?);
    Ok(())
}

fn uniqueness_examples(rep: &mut ClaimReport) -> Result<()> {
    let claim = "fixture.uniqueness";
    let entry = |index: usize, lo: Rational, hi: Rational| DEntry {
        index,
        q: Rational::zero(),
        i: Interval::closed(lo.clone(), hi.clone()),
        u: Interval::closed(lo, hi),
    };
    let list = vec![
        entry(0, r(0, 1), r(1, 2)),
        entry(1, r(1, 4), r(3, 4)),
        entry(2, r(3, 5), r(7, 10)),
    ];
    expect_eq(
        rep,
        claim,
        "greedy S",
        greedy_select(&list).selected,
        vec![0, 2],
    );
    let f = limitlab::approx::TranslationTable::from_pairs(vec![(r(1, 2), r(1, 4))])?;
    let g = limitlab::approx::TranslationTable::from_pairs(vec![(r(1, 2), r(1, 2))])?;
    let pt = PairedTables::new(f, g, r(1, 2), r(1, 1))?;
    let d = enumerate_d(&pt);
    expect_eq(rep, claim, "D size", d.len(), 1);
    expect_eq(
        rep,
        claim,
        "I",
        d[0].i.clone(),
        Interval::closed(r(1, 4), r(1, 2)),
    );
    expect_eq(
        rep,
        claim,
        "U",
        d[0].u.clone(),
        Interval::closed(r(1, 4), r(1, 2)),
    );
    Ok(())
}

fn alternating(rep: &mut ClaimReport) -> Result<()> {
    let claim = "fixture.alternating";
    let input = alternating_pool(2, 0, 0);
    let h = alternating_scenario(&input.gd, &input.alphahat, &input.betahat, &input.pool, 2)?;
    expect_eq(
        rep,
        claim,
        "selection size",
        h.as_ref().map(Vec::len),
        Some(5),
    );
    if let Some(h) = h {
        rep.merge(verify_alternating(&input.gd, &input.betahat, &h)?);
    }
    Ok(())
}

type Fixture = fn(&mut ClaimReport, usize) -> Result<()>;

/// Runs every fixture; a fixture that errors is reported as a failed record.
pub fn run_fixtures(subset_cap: usize) -> Vec<CheckRecord> {
    let all: [(&str, &str, Fixture); 7] = [
        ("bound-trace", BOUND_TRACE, |r, _| bound_trace(r)),
        ("witness", WITNESS, |r, _| witness(r)),
        ("mq-trace", MQ_TRACE, mq_trace),
        (
            "mq-gamma-decreasing",
            MQ_GAMMA_DECREASING,
            mq_gamma_decreasing,
        ),
        ("approx", APPROX_PAIR, |r, _| approx_examples(r)),
        ("uniqueness", "", |r, _| uniqueness_examples(r)),
        ("alternating", "", |r, _| alternating(r)),
    ];
    let mut out = Vec::new();
    for (name, input, run) in all {
        let digest = digest_of(&(name, input));
        let mut rep = ClaimReport::new();
        if let Err(e) = run(&mut rep, subset_cap) {
            rep.check(&format!("fixture.{name}"), false, || format!("error: {e}"));
        }
        out.extend(records_from(&rep, &digest));
    }
    out
}
