use limitlab::approx::TranslationTable;
use limitlab::limittest::{
    build_mq, cover_all, cover_k, verify_limit_claims, GammaDelta, KProfile,
};
use limitlab::measure::{
    brute_force_count, covering_function, measure_via_integral, test_measure, union_measure,
};
use limitlab::uniqueness::{enumerate_d, greedy_select, PairedTables};
use limitlab::{FiniteTest, Interval, Rational};
use proptest::prelude::*;

const DEN: i64 = 64;

fn unit_rational() -> impl Strategy<Value = Rational> {
    (0..=DEN).prop_map(|n| Rational::frac(n, DEN))
}

fn interval() -> impl Strategy<Value = Interval> {
    (unit_rational(), unit_rational(), any::<bool>()).prop_map(|(a, b, closed)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if closed {
            Interval::closed(lo, hi)
        } else {
            Interval::half_open(lo, hi)
        }
    })
}

fn finite_test() -> impl Strategy<Value = FiniteTest> {
    prop::collection::vec(interval(), 0..8).prop_map(FiniteTest::new)
}

/// Strictly increasing keys in `[0, 1)` with nondecreasing values in `[0, 1)`.
fn monotone_pairs(max_len: usize) -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::btree_set(0..DEN, 1..=max_len).prop_flat_map(|keys| {
        let n = keys.len();
        prop::collection::vec(0..DEN, n).prop_map(move |mut vals| {
            vals.sort();
            keys.iter()
                .zip(vals)
                .map(|(&k, v)| (Rational::frac(k, DEN), Rational::frac(v, DEN)))
                .collect()
        })
    })
}

fn constants() -> impl Strategy<Value = (Rational, Rational)> {
    (0..16i64, 1..16i64).prop_map(|(c, w)| {
        (
            Rational::frac(c, 8),
            Rational::frac(c, 8) + Rational::frac(w, 16),
        )
    })
}

fn gamma_delta(max_len: usize) -> impl Strategy<Value = (GammaDelta, Vec<Rational>)> {
    (monotone_pairs(max_len), constants()).prop_map(|(pairs, (c, d))| {
        let keys = pairs.iter().map(|(q, _)| q.clone()).collect();
        let table = TranslationTable::from_pairs(pairs).unwrap();
        (GammaDelta::new(table, c, d).unwrap(), keys)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn covering_matches_brute_force(test in finite_test(), xs in prop::collection::vec(0..=4 * DEN, 1..20)) {
        let cf = covering_function(&test).unwrap();
        for x in xs {
            let x = Rational::frac(x, 4 * DEN);
            prop_assert_eq!(cf.eval(&x).unwrap(), brute_force_count(&test, &x));
        }
    }

    #[test]
    fn measures_agree(test in finite_test()) {
        let sum = test_measure(&test);
        prop_assert_eq!(&sum, &measure_via_integral(&test));
        let intervals: Vec<Interval> = test.iter().cloned().collect();
        prop_assert!(union_measure(&intervals) <= sum);
    }

    #[test]
    fn covering_is_bounded_by_the_count(test in finite_test()) {
        let cf = covering_function(&test).unwrap();
        prop_assert!(cf.max_value() <= test.len() as u64);
    }

    #[test]
    fn mq_claims_hold((gd, keys) in gamma_delta(7)) {
        let rep = verify_limit_claims(&gd, &keys, Some(7)).unwrap();
        prop_assert!(rep.pass(), "{:?}", rep.violations);
    }

    #[test]
    fn prefix_tests_are_initial_parts((gd, keys) in gamma_delta(8)) {
        let (_, trace) = build_mq(&gd, &keys).unwrap();
        for z in 0..keys.len() {
            let (prefix, _) = build_mq(&gd, &keys[..=z]).unwrap();
            prop_assert_eq!(&prefix.intervals, &trace.steps[z].u[..=z].to_vec());
        }
    }

    #[test]
    fn fast_profile_matches_naive_loop((gd, keys) in gamma_delta(6)) {
        let prof = KProfile::new(&gd, &keys, 16).unwrap();
        for (x, p) in prof.samples.iter().enumerate() {
            prop_assert_eq!(prof.k[x], cover_k(&gd, &keys, p).unwrap());
            prop_assert_eq!(prof.big_k[x], cover_all(&gd, &keys, p, 16).unwrap());
        }
    }

    #[test]
    fn big_k_grows_with_prefixes((gd, keys) in gamma_delta(6), x in 0..=DEN) {
        let x = Rational::frac(x, DEN);
        let mut last = 0;
        for z in 0..keys.len() {
            let now = cover_all(&gd, &keys[..=z], &x, 16).unwrap();
            prop_assert!(last <= now);
            last = now;
        }
    }

    #[test]
    fn greedy_selection_is_a_solovay_test(fp in monotone_pairs(12), shift in 0..DEN) {
        let f = TranslationTable::from_pairs(fp.clone()).unwrap();
        let gp: Vec<_> = fp
            .iter()
            .map(|(q, v)| {
                let w = v + Rational::frac(shift, DEN * DEN);
                (q.clone(), if w < Rational::one() { w } else { v.clone() })
            })
            .collect();
        let g = TranslationTable::from_pairs(gp).unwrap();
        prop_assume!(g.is_monotone());
        let pt = PairedTables::new(f, g, Rational::frac(1, 4), Rational::frac(3, 4)).unwrap();
        let sel = greedy_select(&enumerate_d(&pt));
        for a in 0..sel.entries.len() {
            for b in a + 1..sel.entries.len() {
                prop_assert!(!sel.entries[a].i.intersects(&sel.entries[b].i));
            }
        }
        prop_assert_eq!(sel.u_total(), sel.i_total());
        prop_assert!(sel.u_total() <= Rational::one());
    }
}
