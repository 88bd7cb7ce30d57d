//! Seeded pseudo-random scenarios and engineered inputs.

use limitlab::approx::TranslationTable;
use limitlab::limittest::GammaDelta;
use limitlab::scenario::Scenario;
use limitlab::uniqueness::PairedTables;
use limitlab::Rational;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Largest denominator of a freely drawn rational.
pub const MAX_DENOMINATOR: i64 = 1 << 16;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[lo, hi)` with denominator at most `MAX_DENOMINATOR`.
/// Requires `lo < hi` and `hi − lo` wide enough for some admissible
/// denominator, which holds for every call site here.
pub fn rational_in(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let ceil_times = |x: &Rational, den: i64| -> i64 {
        (x.as_big() * BigRational::from_integer(den.into()))
            .ceil()
            .to_integer()
            .to_i64()
            .expect("bounded numerator")
    };
    loop {
        let den = rng.gen_range(2..=MAX_DENOMINATOR);
        let (first, past) = (ceil_times(lo, den), ceil_times(hi, den));
        if first < past {
            return Rational::frac(rng.gen_range(first..past), den);
        }
    }
}

/// `count` distinct rationals in `[lo, hi)`, sorted.
fn distinct_in(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    while set.len() < count {
        set.insert(rational_in(rng, lo, hi));
    }
    set.into_iter().collect()
}

/// A monotone table with `points` keys in `[0, key_bound)` and values in
/// `[0, value_bound)`, enumerated in a shuffled order.
pub fn monotone_table(
    rng: &mut ChaCha8Rng,
    points: usize,
    key_bound: &Rational,
    value_bound: &Rational,
) -> TranslationTable {
    let keys = distinct_in(rng, &Rational::zero(), key_bound, points);
    let mut vals: Vec<Rational> = (0..points)
        .map(|_| rational_in(rng, &Rational::zero(), value_bound))
        .collect();
    vals.sort();
    let mut enumeration = keys.clone();
    enumeration.shuffle(rng);
    TranslationTable::new(keys.into_iter().zip(vals).collect(), enumeration)
        .and_then(TranslationTable::into_monotone)
        .expect("generated table is valid")
}

/// A deterministic scenario: monotone `g` with between one and `max_points`
/// keys below `β`, approximations `a`, `b` satisfying the index condition
/// for `c`, and constants `0 < c < d` with `d − c < 1`.
pub fn generate_scenario(seed: u64, max_points: usize) -> Scenario {
    let mut rng = rng_for(seed);
    let points = rng.gen_range(1..=max_points.max(1));
    scenario_from(&mut rng, points)
}

/// Like `generate_scenario` with exactly `points` keys.
pub fn generate_scenario_sized(seed: u64, points: usize) -> Scenario {
    scenario_from(&mut rng_for(seed), points.max(1))
}

fn scenario_from(rng: &mut ChaCha8Rng, points: usize) -> Scenario {
    let sixteenth = |k: i64| Rational::frac(k, 16);
    let alpha = rational_in(rng, &sixteenth(4), &Rational::one());
    let beta = rational_in(rng, &sixteenth(8), &sixteenth(15));
    let g = monotone_table(rng, points, &beta, &alpha);

    let c = sixteenth(rng.gen_range(1..=32));
    let d = &c + sixteenth(rng.gen_range(1..=15));

    let len = rng.gen_range(2..=8);
    let mut b = distinct_in(rng, &Rational::zero(), &beta, len);
    b[0] = Rational::zero();
    b.dedup();
    // α − a_n = (c/2)(β − b_n) keeps the index condition strict
    let half_c = &c * Rational::frac(1, 2);
    let a = b
        .iter()
        .map(|bn| {
            let v = &alpha - &half_c * (&beta - bn);
            if v.is_negative() {
                Rational::zero()
            } else {
                v
            }
        })
        .collect();
    Scenario {
        alpha,
        beta,
        a,
        b,
        g,
        c,
        d,
    }
}

/// Two independent monotone tables on the same keys and random constants.
pub fn generate_paired(seed: u64, max_points: usize) -> PairedTables {
    let mut rng = rng_for(seed);
    let points = rng.gen_range(1..=max_points.max(1));
    let keys = distinct_in(&mut rng, &Rational::zero(), &Rational::one(), points);
    let mut tables = Vec::new();
    for _ in 0..2 {
        let mut vals: Vec<Rational> = (0..points)
            .map(|_| rational_in(&mut rng, &Rational::zero(), &Rational::one()))
            .collect();
        vals.sort();
        let mut enumeration = keys.clone();
        enumeration.shuffle(&mut rng);
        tables.push(
            TranslationTable::new(keys.iter().cloned().zip(vals).collect(), enumeration)
                .expect("generated table is valid"),
        );
    }
    let c = Rational::frac(rng.gen_range(0..16), 16);
    let d = &c + Rational::frac(rng.gen_range(1..16), 16);
    let g = tables.pop().expect("two tables");
    let f = tables.pop().expect("two tables");
    PairedTables::new(f, g, c, d).expect("generated pair is valid")
}

/// Tables `f(q) = α̂ − (d + s)(β̂ − q)` and `g(q) = α̂ − (c − s)(β̂ − q)` on
/// keys in `[p, β̂)` plus a few keys below `p`, so that the gap inequalities
/// hold on `[p, β̂)` by construction.
pub struct CoverageInput {
    pub tables: PairedTables,
    pub alphahat: Rational,
    pub betahat: Rational,
    pub p: Rational,
}

pub fn engineered_coverage(seed: u64, points: usize) -> CoverageInput {
    let mut rng = rng_for(seed);
    let sixteenth = |k: i64| Rational::frac(k, 16);
    let betahat = rational_in(&mut rng, &sixteenth(8), &sixteenth(15));
    let alphahat = rational_in(&mut rng, &sixteenth(8), &sixteenth(15));
    let c = sixteenth(rng.gen_range(2..=8));
    let d = &c + sixteenth(rng.gen_range(1..=7));
    let slack = Rational::frac(1, rng.gen_range(2..=64));
    let p = rational_in(&mut rng, &sixteenth(4), &betahat);
    let mut keys = distinct_in(&mut rng, &p, &betahat, points.max(1));
    keys.push(p.clone());
    keys.extend(distinct_in(&mut rng, &Rational::zero(), &p, 2));
    keys.sort();
    keys.dedup();
    let f_slope = &d + &slack;
    let g_slope = &c - &slack * &c;
    let f_pairs = keys
        .iter()
        .map(|q| (q.clone(), &alphahat - &f_slope * (&betahat - q)))
        .collect();
    let g_pairs = keys
        .iter()
        .map(|q| (q.clone(), &alphahat - &g_slope * (&betahat - q)))
        .collect();
    let f = TranslationTable::from_pairs(f_pairs).expect("keys are distinct");
    let g = TranslationTable::from_pairs(g_pairs).expect("keys are distinct");
    CoverageInput {
        tables: PairedTables::new(f, g, c, d).expect("engineered pair is valid"),
        alphahat,
        betahat,
        p,
    }
}

/// Pool for the alternating construction with `α̂ = 1/2`, `β̂ = 3/4`,
/// `c = 1/2`, `d = 1`: points `β̂ − D_j` with `D_j = 8^{−j}/4`, alternating
/// between ratio `c/2` (in `T`) and ratio `2` (in `S`), plus `decoys`
/// random keys below the first point whose values keep them out of `T`.
pub struct AlternatingInput {
    pub gd: GammaDelta,
    pub alphahat: Rational,
    pub betahat: Rational,
    pub pool: Vec<Rational>,
}

pub fn alternating_pool(k: usize, decoys: usize, seed: u64) -> AlternatingInput {
    let mut rng = rng_for(seed);
    let (alphahat, betahat) = (Rational::frac(1, 2), Rational::frac(3, 4));
    let (c, d) = (Rational::frac(1, 2), Rational::one());
    let mut pairs = Vec::new();
    for j in 0..=2 * k {
        let dist = Rational::frac(1, 4) * Rational::pow2(-3 * j as i32);
        let rho = if j % 2 == 0 {
            &c * Rational::frac(1, 2)
        } else {
            Rational::integer(2)
        };
        pairs.push((&betahat - &dist, &alphahat - rho * &dist));
    }
    let first = pairs[0].0.clone();
    for q in distinct_in(&mut rng, &Rational::zero(), &first, decoys) {
        let v = rational_in(&mut rng, &Rational::zero(), &Rational::frac(1, 8));
        pairs.push((q, v));
    }
    let pool = pairs.iter().map(|(q, _)| q.clone()).collect();
    let table = TranslationTable::from_pairs(pairs).expect("keys are distinct");
    AlternatingInput {
        gd: GammaDelta::new(table, c, d).expect("constants are valid"),
        alphahat,
        betahat,
        pool,
    }
}
