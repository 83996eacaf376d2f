//! Acceptance gate. Each test is one criterion and prints a single
//! pass/fail line; the expensive desk sweep runs once and is shared.
//!
//! Reference constants were generated independently with mpmath at 40
//! significant digits and are frozen here.

mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use pascaline::bounds::{thm21_exp_rhs, thm21_rational_rhs, thm24_exp_rhs, thm24_rational_rhs, BoundId};
use pascaline::exactnum::{rat_nat, self_pow};
use pascaline::rigor::{adaptive_compare, Rel, Scalar};
use pascaline::search::{c23_from_pairs, c23_target, scan_pairs, PairRecord, Strictness};
use pascaline::verify::{regression_suite, sweep_fn, SweepOptions, SweepReport};
use pascaline::{Interval, Natural, Rational, State};
use std::cmp::Ordering;
use std::sync::OnceLock;

/// The eighteen window hits with n <= 1500, in scan order.
const EXPECTED_PAIRS: [(u64, u64); 18] = [
    (2, 1),
    (4, 1),
    (19, 6),
    (61, 23),
    (89, 35),
    (130, 53),
    (139, 57),
    (291, 126),
    (343, 150),
    (521, 233),
    (712, 323),
    (788, 359),
    (929, 426),
    (950, 436),
    (971, 446),
    (1080, 498),
    (1289, 598),
    (1387, 645),
];

// mpmath, 40 significant digits.
const TARGET_DECIMAL: &str = "1.162447351509626475570899814477837066859";
const STAT_NONSTRICT_DECIMAL: &str = "1.187018868670333342940938041768060813074";
const STAT_STRICT_DECIMAL: &str = "1.117194229336784322767941686369939588776";

fn suite() -> &'static [SweepReport] {
    static SUITE: OnceLock<Vec<SweepReport>> = OnceLock::new();
    SUITE.get_or_init(|| regression_suite(&SweepOptions::default()).expect("desk sweep"))
}

fn report(name: &str) -> &'static SweepReport {
    suite().iter().find(|r| r.bound == name).unwrap_or_else(|| panic!("{name} in suite"))
}

fn scan_1500() -> &'static (Vec<PairRecord>, f64) {
    static SCAN: OnceLock<(Vec<PairRecord>, f64)> = OnceLock::new();
    SCAN.get_or_init(|| {
        let t0 = std::time::Instant::now();
        let (pairs, _) = scan_pairs(1500, None).expect("scan");
        (pairs, t0.elapsed().as_secs_f64())
    })
}

fn criterion(name: &str, ok: bool, detail: &str) {
    println!("{name}: {} - {detail}", if ok { "pass" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn clean_sweep(rep: &SweepReport, expected_total: u64) -> bool {
    rep.total == expected_total && rep.holds == expected_total && rep.fails == 0 && rep.undecided == 0
}

fn decimal(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').expect("decimal point");
    let digits: String = format!("{int}{frac}");
    Rational::new(
        digits.parse::<BigInt>().expect("digits"),
        BigInt::from(10u32).pow(frac.len() as u32),
    )
}

/// Enclosure contains the reference value and is narrower than `10^-eps10`.
fn pins_value(iv: &Interval, reference: &Rational, eps10: u32) -> bool {
    let eps = Rational::new(BigInt::one(), BigInt::from(10u32).pow(eps10));
    iv.contains_rational(reference)
        && !iv.contains_rational(&(reference.clone() + eps.clone()))
        && !iv.contains_rational(&(reference.clone() - eps))
}

#[test]
fn ac01_quintuple_split_desk_sweep_holds_within_budget() {
    let rep = report("lemma22");
    let ok = clean_sweep(rep, 605) && rep.wall_time_seconds < 60.0;
    criterion(
        "AC1",
        ok,
        &format!(
            "k=80..200, r=0..4: {}/{} hold, {} fails, {} undecided in {:.2} s (< 60 s)",
            rep.holds, rep.total, rep.fails, rep.undecided, rep.wall_time_seconds
        ),
    );
}

#[test]
fn ac02_window_scan_reproduces_the_published_pairs() {
    let (pairs, elapsed) = scan_1500();
    let got: Vec<(u64, u64)> = pairs.iter().map(|p| (p.n, p.k)).collect();
    let mut ok = got == EXPECTED_PAIRS && *elapsed < 10.0;
    for p in pairs {
        ok &= p.certified_f == (p.n >= 6);
        ok &= p.strict_upper == (p.n != 2 && p.n != 4);
    }
    criterion(
        "AC2",
        ok,
        &format!(
            "scan to 1500 found {} pairs in {elapsed:.2} s (< 10 s), n >= 6 all certified",
            pairs.len()
        ),
    );
}

#[test]
fn ac03_rational_strengthening_holds_and_follows_from_the_exponential_form() {
    let rational = report("thm21-rational");
    let exponential = report("thm21-exp");
    let mut ok = clean_sweep(rational, 998_001) && exponential.fails == 0 && exponential.undecided == 0;

    // Chain: the exponential right side is strictly below the rational
    // right side at every admissible point with n <= 300, so together
    // with the exponential sweep the full chain
    // weighted lhs < exp form < rational form holds there.
    let mut chain_points = 0u32;
    for n in 4..=300u64 {
        for k in 2..=n / 2 {
            let rhs_exact = thm21_rational_rhs(n, k).expect("rational rhs");
            let verdict = adaptive_compare(
                &|p| thm21_exp_rhs(n, k, p).map(Scalar::Enclosure),
                &|_| Ok(Scalar::Exact(rhs_exact.clone())),
                Rel::Lt,
                1024,
            )
            .expect("comparable");
            ok &= verdict.state == State::Holds;
            chain_points += 1;
        }
    }
    ok &= chain_points == exponential.total as u32;
    criterion(
        "AC3",
        ok,
        &format!(
            "exact sweep n=4..2000 clean ({} points); exp form implies rational form at all {} points with n <= 300",
            rational.total, chain_points
        ),
    );
}

#[test]
fn ac04_fifth_slice_bounds_hold_and_chain_through_the_splitting_lemma() {
    let rational = report("thm24-rational");
    let exponential = report("thm24-exp");
    let pow2 = report("thm24-pow2");
    let corollary = report("cor21");
    let mut ok = clean_sweep(rational, 193_161)
        && clean_sweep(pow2, 30_381)
        && exponential.fails == 0
        && exponential.undecided == 0
        && corollary.fails == 0
        && corollary.undecided == 0;

    // Chain at sampled points with k > floor(n/5): the exponential right
    // side sits strictly below the rational one, and the splitting
    // inequality n^n <= k^k (n-k)^(n-k) 2^n carries the weighted bound
    // over to the plain binomial (power-of-two) form.
    let mut chain_points = 0u32;
    for n in (400..=600u64).step_by(23) {
        for k in [n / 5 + 1, (n / 5 + n / 2) / 2, n / 2] {
            if k <= n / 5 || k > n / 2 {
                continue;
            }
            let verdict = adaptive_compare(
                &|p| thm24_exp_rhs(n, k, p).map(Scalar::Enclosure),
                &|p| thm24_rational_rhs(n, k, p).map(Scalar::Enclosure),
                Rel::Lt,
                1024,
            )
            .expect("comparable");
            ok &= verdict.state == State::Holds;
            let split = self_pow(k) * self_pow(n - k) << n;
            ok &= self_pow(n) <= split;
            chain_points += 1;
        }
    }
    criterion(
        "AC4",
        ok,
        &format!(
            "exact sweeps clean ({} + {} + {} points); chain verified at {} sampled points",
            rational.total, pow2.total, corollary.total, chain_points
        ),
    );
}

#[test]
fn ac05_factorial_brackets_certify_to_one_thousand() {
    let names = [
        ("robbins-lower", 1000),
        ("robbins-upper", 1000),
        ("hirschhorn-lower", 999),
        ("hirschhorn-upper", 999),
        ("hirschhorn-remainder", 999),
    ];
    let mut ok = true;
    let mut max_bits = 0u32;
    for (name, expected) in names {
        let rep = report(name);
        ok &= clean_sweep(rep, expected);
        max_bits = max_bits.max(rep.max_precision_used);
    }
    ok &= max_bits <= 1024;
    criterion(
        "AC5",
        ok,
        &format!("factorial brackets and remainder window hold to n=1000 using <= {max_bits} bits (cap 1024)"),
    );
}

#[test]
fn ac06_auxiliary_bounds_hold_on_their_desks() {
    let mut ok = true;
    let mut points = 0u64;
    for name in ["eq12-upper", "thm22", "thm23", "stanica-lower", "stanica-upper"] {
        let rep = report(name);
        ok &= rep.fails == 0 && rep.undecided == 0 && rep.holds == rep.total;
        points += rep.total;
    }
    criterion("AC6", ok, &format!("eq12/thm22/thm23/stanica desks clean over {points} points"));
}

fn f_linear(n: u64) -> u64 {
    let two_n = BigUint::one() << n;
    let np1 = BigUint::from(n + 1);
    let mut c = BigUint::one();
    let mut k = 0u64;
    loop {
        if &c * &np1 > two_n {
            return k;
        }
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
        k += 1;
    }
}

#[test]
fn ac07_threshold_search_matches_a_linear_reference() {
    let mut ok = true;
    for n in 3..=200u64 {
        ok &= pascaline::search::f_of_n(n).expect("threshold") == f_linear(n);
    }
    let rep = report("ineq28");
    ok &= clean_sweep(rep, 1995);
    criterion(
        "AC7",
        ok,
        &format!("binary threshold equals linear scan for n=3..200; half-bound holds over {} points", rep.total),
    );
}

#[test]
fn ac08_scan_statistic_survives_independent_recomputation() {
    let (pairs, _) = scan_1500();

    // Round-trip through the emitted row format, as the scan file stores it.
    let rows: Vec<String> = pairs
        .iter()
        .map(|p| format!("{},{},{},{},{}", p.n, p.k, p.binom, p.strict_upper, p.certified_f))
        .collect();
    let reparsed: Vec<PairRecord> = rows
        .iter()
        .map(|row| {
            let cols: Vec<&str> = row.split(',').collect();
            let n: u64 = cols[0].parse().expect("n");
            let k: u64 = cols[1].parse().expect("k");
            let binom = cols[2].parse::<BigUint>().expect("binom");
            PairRecord {
                n,
                k,
                binom,
                window_low: rat_nat(BigUint::one() << n, Natural::from(n + 1)),
                window_high: rat_nat(BigUint::one() << n, Natural::from(n)),
                strict_upper: cols[3] == "true",
                certified_f: cols[4] == "true",
            }
        })
        .collect();

    let engine_ns = c23_from_pairs(pairs, 1500, Strictness::NonStrict, 96);
    let engine_s = c23_from_pairs(pairs, 1500, Strictness::Strict, 96);
    let file_ns = c23_from_pairs(&reparsed, 1500, Strictness::NonStrict, 96);
    let file_s = c23_from_pairs(&reparsed, 1500, Strictness::Strict, 96);

    let mut ok = engine_ns.count == 17 && engine_s.count == 16;
    ok &= file_ns.count == engine_ns.count && file_s.count == engine_s.count;
    ok &= file_ns.statistic.lo().cmp_value(engine_ns.statistic.lo()) == Ordering::Equal
        && file_ns.statistic.hi().cmp_value(engine_ns.statistic.hi()) == Ordering::Equal
        && file_s.statistic.lo().cmp_value(engine_s.statistic.lo()) == Ordering::Equal
        && file_s.statistic.hi().cmp_value(engine_s.statistic.hi()) == Ordering::Equal;

    // Enclosures must pin the frozen reference values to 25 decimals.
    ok &= pins_value(&engine_ns.statistic, &decimal(STAT_NONSTRICT_DECIMAL), 25);
    ok &= pins_value(&engine_s.statistic, &decimal(STAT_STRICT_DECIMAL), 25);
    ok &= pins_value(&c23_target(96), &decimal(TARGET_DECIMAL), 25);

    criterion(
        "AC8",
        ok,
        "counts 17/16 at x=1500 agree with the emitted rows; enclosures pin the references to 25 decimals",
    );
}

#[test]
fn ac09_weakened_comparison_is_caught_at_the_first_tuple() {
    // Weaken the rational bound's scale from 6n^2 to 6n and sweep; the
    // engine must fail and surface (4, 2) as the first counterexample.
    let point = |params: &[u64]| -> pascaline::Result<pascaline::Verdict> {
        let (n, k) = (params[0], params[1]);
        let lhs = Natural::from(6u64)
            * Natural::from(n)
            * pascaline::exactnum::binomial(n, k)
            * self_pow(k)
            * self_pow(n - k);
        let coeff = BigInt::from(6) * BigInt::from(n) - BigInt::from(5) * BigInt::from(k - 1);
        let rhs = Rational::from_integer(coeff * BigInt::from(n))
            * pascaline::exactnum::nat_to_rational(&self_pow(n - 1));
        let lq = pascaline::exactnum::nat_to_rational(&lhs);
        adaptive_compare(
            &|_| Ok(Scalar::Exact(lq.clone())),
            &|_| Ok(Scalar::Exact(rhs.clone())),
            Rel::Lt,
            64,
        )
    };
    let rep = sweep_fn(
        BoundId::Thm21Rational,
        &[Some((4, 200)), None],
        &SweepOptions::default(),
        point,
    )
    .expect("sweep");
    let ok = rep.fails > 0 && rep.witnesses.first() == Some(&vec![4, 2]);
    criterion(
        "AC9",
        ok,
        &format!("{} failures detected, first witness {:?}", rep.fails, rep.witnesses.first()),
    );
}

#[test]
fn ac10_random_enclosures_and_adaptive_refinement_are_sound() {
    use rand::{Rng, SeedableRng};
    let seed = 0xacce97ed_u64;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut contained = 0u32;
    for i in 0..1000 {
        let (expr, value) = common::next_expression(&mut rng, 3);
        // Containment at each precision, and no widening when the
        // precision doubles 48 -> 96 -> 192.
        let mut prev_width: Option<pascaline::rigor::Dyadic> = None;
        let mut all = true;
        for p in [48u32, 96, 192] {
            match common::eval_interval(&expr, p) {
                Ok(iv) => {
                    assert!(
                        iv.contains_rational(&value),
                        "AC10: expression {i} (seed {seed:#x}) escaped its enclosure at {p} bits"
                    );
                    if let Some(w) = &prev_width {
                        assert_ne!(
                            iv.width().cmp_value(w),
                            Ordering::Greater,
                            "AC10: expression {i} (seed {seed:#x}) widened at {p} bits"
                        );
                    }
                    prev_width = Some(iv.width());
                }
                Err(_) => all = false,
            }
        }
        if all {
            contained += 1;
        }
    }

    // Decided verdicts stay decided, with the same state, as the cap grows.
    let mut stable = true;
    for _ in 0..200 {
        let a = Rational::new(BigInt::from(rng.gen_range(-9999i64..10000)), BigInt::from(rng.gen_range(1i64..500)));
        let b = Rational::new(BigInt::from(rng.gen_range(-9999i64..10000)), BigInt::from(rng.gen_range(1i64..500)));
        if a == b {
            continue;
        }
        let lhs = |p: u32| Ok(Scalar::Enclosure(Interval::from_rational(&a, p)));
        let rhs = |p: u32| Ok(Scalar::Enclosure(Interval::from_rational(&b, p)));
        let narrow = adaptive_compare(&lhs, &rhs, Rel::Le, 128).expect("comparable");
        let wide = adaptive_compare(&lhs, &rhs, Rel::Le, 2048).expect("comparable");
        stable &= narrow.state == wide.state;
    }
    let ok = contained >= 900 && stable;
    criterion(
        "AC10",
        ok,
        &format!(
            "{contained}/1000 expressions enclosed and monotone across 48/96/192 bits (>= 900); adaptive verdicts cap-stable"
        ),
    );
}
