//! Verdict machinery: pointwise checks and block sweeps.
//!
//! A pointwise [`check`] builds both sides of the inequality and hands them
//! to the adaptive comparator. Block sweeps ([`check_block`]) walk one
//! parameter over a contiguous (or stepped) range with a fixed prefix,
//! sharing row state — incremental binomials, per-row enclosures, running
//! factorials — and fall back to the pointwise path for any point the
//! cheap first-precision screen cannot separate.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::exactnum::{self, binomial, factorial, ipow, ipow0, nat_to_rational, rat_nat, Natural, Rational};
use crate::rigor::{
    adaptive_compare, exp, log, pi_enclosure, sqrt, Dyadic, Interval, Rel, Scalar, State, Verdict,
};
use crate::search::{self, Strictness};
use crate::Result;

use super::{eval, BoundId, CheckSpec, Mode, Workspace};

fn bi(v: u64) -> BigInt {
    BigInt::from(v)
}

fn rel_of(s: Strictness) -> Rel {
    match s {
        Strictness::Strict => Rel::Lt,
        Strictness::NonStrict => Rel::Le,
    }
}

fn exact_nat(v: &Natural) -> Scalar {
    Scalar::Exact(nat_to_rational(v))
}

/// Merge the verdicts of a conjunction's legs: any failing leg fails the
/// conjunction, otherwise any undecided leg leaves it undecided. The margin
/// is the minimum (binding) leg margin; precision the maximum used.
fn merge_conjunction(a: Verdict, b: Verdict) -> Verdict {
    let state = match (a.state, b.state) {
        (State::Fails, _) | (_, State::Fails) => State::Fails,
        (State::Undecided, _) | (_, State::Undecided) => State::Undecided,
        _ => State::Holds,
    };
    let margin = match (&a.margin, &b.margin) {
        (Some(x), Some(y)) => Some(x.min_with(y)),
        (Some(x), None) => Some(x.clone()),
        (None, y) => y.clone(),
    };
    Verdict::new(state, a.precision_used.max(b.precision_used), margin)
}

/// Exact values for the product comparison
/// `(m/(m-1))^r (n+1-r)/(n+1) <= prod < (m/(m-1))^r`:
/// returns `(lower, product, upper)`.
pub(crate) fn ineq26_values(m: u64, r: u64, n: u64) -> Result<(Rational, Rational, Rational)> {
    if m < 3 || r < 1 || r > m - 1 || n < r || (n - r) % m != 0 {
        return Err(Error::domain("product bounds need m >= 3, 1 <= r < m, n ≡ r (mod m)"));
    }
    let q = (n - r) / m;
    let mut prod = Rational::one();
    for j in 0..r {
        prod *= Rational::new(bi(n - j), bi(n - q - j));
    }
    let scale = rat_nat(
        ipow(&Natural::from(m), r)?,
        ipow(&Natural::from(m - 1), r)?,
    );
    let lower = &scale * Rational::new(bi(n + 1 - r), bi(n + 1));
    Ok((lower, prod, scale))
}

/// Exact integer parts of the polynomial comparison behind the block
/// estimate: `(N^3 (240N^3+120N^2+30N+1), 30 (8k^3+4k^2+k)(8M^3+4M^2+M))`
/// with `N = 5k+r`, `M = 4k+r`. The right part is still to be multiplied
/// by `pi^3`.
pub(crate) fn ineq27_parts(k: u64, r: u64) -> Result<(Natural, Natural)> {
    let nn = 5u64
        .checked_mul(k)
        .and_then(|v| v.checked_add(r))
        .ok_or_else(|| Error::domain("5k + r overflows"))?;
    let mm = 4 * k + r;
    let cube = |v: u64| -> Natural { ipow0(&Natural::from(v), 3) };
    let sq = |v: u64| -> Natural { ipow0(&Natural::from(v), 2) };
    let lhs = cube(nn)
        * (cube(nn) * Natural::from(240u32)
            + sq(nn) * Natural::from(120u32)
            + Natural::from(nn) * Natural::from(30u32)
            + Natural::from(1u32));
    let poly = |v: u64| -> Natural {
        cube(v) * Natural::from(8u32) + sq(v) * Natural::from(4u32) + Natural::from(v)
    };
    let rhs = Natural::from(30u32) * poly(k) * poly(mm);
    Ok((lhs, rhs))
}

/// `x = 11(k-1)/(12n^2)` and its quadratic majorant pieces for the
/// exponential comparison: `(x, 1 - x + x^2/2, 1 - 5(k-1)/(6n^2))`.
pub(crate) fn ineq25_values(n: u64, k: u64) -> (Rational, Rational, Rational) {
    let x = Rational::new(bi(11) * bi(k - 1), bi(12) * bi(n) * bi(n));
    let quad = Rational::one() - &x + &x * &x / Rational::from_integer(2.into());
    let lin = Rational::one() - Rational::new(bi(5) * bi(k - 1), bi(6) * bi(n) * bi(n));
    (x, quad, lin)
}

/// `6n^2` as a big natural.
fn six_n2(n: u64) -> Natural {
    Natural::from(n) * Natural::from(n) * Natural::from(6u32)
}

/// Cleared-integer sides of the rational damping comparison:
/// `(6n^2 C k^k (n-k)^(n-k), (6n^2 - 5(k-1)) n (n-1)^(n-1))`.
/// No hypothesis gate: at `k = 1` the two sides are equal by construction,
/// which is why the theorem starts at `k = 2`.
pub fn thm21_cleared_parts(n: u64, k: u64, ws: &Workspace) -> Result<(Natural, Natural)> {
    if n < 2 || k < 1 || k > n / 2 {
        return Err(Error::domain("cleared parts need n >= 2, 1 <= k <= floor(n/2)"));
    }
    let lhs = six_n2(n) * eval::binom_weighted(n, k, ws)?;
    let coeff = six_n2(n) - Natural::from(k - 1) * Natural::from(5u32);
    let rhs = coeff * Natural::from(n) * ws.sp(n - 1);
    Ok((lhs, rhs))
}

/// Evaluate one spec to a verdict. The hypothesis is enforced; a witness
/// is attached on failure.
pub fn check(spec: &CheckSpec, ws: &Workspace) -> Result<Verdict> {
    spec.bound.hypothesis(&spec.params)?;
    match spec.mode {
        Mode::Exact if !spec.bound.supports_exact() => {
            return Err(Error::domain(format!(
                "{} has no exact form (transcendental constants remain after clearing)",
                spec.bound.cli_name()
            )));
        }
        Mode::Interval if !spec.bound.supports_interval() => {
            return Err(Error::domain(format!(
                "{} is a pure integer statement with no interval form",
                spec.bound.cli_name()
            )));
        }
        _ => {}
    }
    Ok(check_in_hypothesis(spec, ws)?.with_witness(&spec.params))
}

/// The dispatch body; callers guarantee the hypothesis and mode support.
fn check_in_hypothesis(spec: &CheckSpec, ws: &Workspace) -> Result<Verdict> {
    let ps = &spec.params;
    let cap = spec.precision_cap;
    let strict = spec.strictness.unwrap_or(spec.bound.canonical_strictness());
    let rel = rel_of(strict);
    match spec.bound {
        BoundId::RobbinsLower => {
            let n = ps[0];
            let f = exact_nat(&factorial(n));
            adaptive_compare(
                &|p| Ok(Scalar::Enclosure(eval::robbins_bounds(n, p)?.0)),
                &|_| Ok(f.clone()),
                rel,
                cap,
            )
        }
        BoundId::RobbinsUpper => {
            let n = ps[0];
            let f = exact_nat(&factorial(n));
            adaptive_compare(
                &|_| Ok(f.clone()),
                &|p| Ok(Scalar::Enclosure(eval::robbins_bounds(n, p)?.1)),
                rel,
                cap,
            )
        }
        BoundId::HirschhornLower | BoundId::HirschhornUpper => {
            // Compared in sixth-power form, both sides multiplied by e^(6n):
            // lower: pi^3 (8n^3+4n^2+n) n^(6n)  <  (n!)^6 e^(6n)
            // upper: 30 (n!)^6 e^(6n)  <  pi^3 (240n^3+120n^2+30n+1) n^(6n)
            let n = ps[0];
            let is_lower = spec.bound == BoundId::HirschhornLower;
            let f6 = ipow(&factorial(n), 6)?;
            let scaled_f6 = if is_lower { f6 } else { Natural::from(30u32) * f6 };
            let (poly_lo, poly_hi) = eval::hirschhorn_polys(n);
            let pn = if is_lower { poly_lo } else { poly_hi } * ipow0(&ws.sp(n), 6);
            let six_n = Natural::from(6u32) * Natural::from(n);
            let pi_side = |p: u32| -> std::result::Result<Scalar, Error> {
                let w = p + 8;
                Ok(Scalar::Enclosure(
                    pi_enclosure(w).powi(3, w).mul(&Interval::from_natural(&pn), w),
                ))
            };
            let e_side = |p: u32| -> std::result::Result<Scalar, Error> {
                let w = p + 8;
                Ok(Scalar::Enclosure(
                    Interval::from_natural(&scaled_f6)
                        .mul(&exp(&Interval::from_natural(&six_n), w), w),
                ))
            };
            if is_lower {
                adaptive_compare(&pi_side, &e_side, rel, cap)
            } else {
                adaptive_compare(&e_side, &pi_side, rel, cap)
            }
        }
        BoundId::HirschhornRemainder => {
            let n = ps[0];
            let fact = factorial(n);
            let r = |p: u32| -> std::result::Result<Scalar, Error> {
                Ok(Scalar::Enclosure(eval::hirschhorn_r_with(n, &fact, p)?))
            };
            let five = Scalar::Exact(exactnum::rat(5, 1));
            let eleven = Scalar::Exact(exactnum::rat(11, 1));
            let a = adaptive_compare(&|_| Ok(five.clone()), &r, rel, cap)?;
            let b = adaptive_compare(&r, &|_| Ok(eleven.clone()), rel, cap)?;
            Ok(merge_conjunction(a, b))
        }
        BoundId::Eq12Upper => {
            let (m, n) = (ps[0], ps[1]);
            let c = exact_nat(&binomial(
                m.checked_mul(n).ok_or_else(|| Error::domain("mn overflows"))?,
                n,
            ));
            adaptive_compare(
                &|_| Ok(c.clone()),
                &|p| Ok(Scalar::Enclosure(eval::eq12_upper(m, n, p)?)),
                rel,
                cap,
            )
        }
        BoundId::StanicaLower | BoundId::StanicaUpper => {
            let (m, pk, n) = (ps[0], ps[1], ps[2]);
            let mn = m.checked_mul(n).ok_or_else(|| Error::domain("mn overflows"))?;
            let c = exact_nat(&binomial(mn, pk * n));
            if spec.bound == BoundId::StanicaLower {
                adaptive_compare(
                    &|p| Ok(Scalar::Enclosure(eval::stanica_bounds(m, pk, n, p)?.0)),
                    &|_| Ok(c.clone()),
                    rel,
                    cap,
                )
            } else {
                adaptive_compare(
                    &|_| Ok(c.clone()),
                    &|p| Ok(Scalar::Enclosure(eval::stanica_bounds(m, pk, n, p)?.1)),
                    rel,
                    cap,
                )
            }
        }
        BoundId::Thm21Rational => {
            let (n, k) = (ps[0], ps[1]);
            let lhs = six_n2(n) * eval::binom_weighted(n, k, ws)?;
            let coeff = six_n2(n) - Natural::from(k - 1) * Natural::from(5u32);
            let rhs = coeff * Natural::from(n) * ws.sp(n - 1);
            exactish_compare(&lhs, &rhs, rel, spec.mode, cap)
        }
        BoundId::Thm21Exp => {
            let (n, k) = (ps[0], ps[1]);
            let lhs = exact_nat(&eval::binom_weighted(n, k, ws)?);
            adaptive_compare(
                &|_| Ok(lhs.clone()),
                &|p| Ok(Scalar::Enclosure(eval::thm21_exp_rhs(n, k, p)?)),
                rel,
                cap,
            )
        }
        BoundId::Thm22 => {
            let (n, k) = (ps[0], ps[1]);
            let c = exact_nat(&binomial(n, k));
            adaptive_compare(
                &|_| Ok(c.clone()),
                &|p| Ok(Scalar::Enclosure(eval::thm22_rhs(n, p)?)),
                rel,
                cap,
            )
        }
        BoundId::Thm22Weak => {
            let (n, k) = (ps[0], ps[1]);
            let c = binomial(n, k);
            let lhs = Natural::from(25u32) * &c * &c * Natural::from(n);
            let rhs = Natural::one() << (2 * n + 4);
            if spec.mode == Mode::Exact {
                exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
            } else {
                // original form: binom(n,k) < (4/5) 2^n / sqrt(n)
                let cq = exact_nat(&c);
                adaptive_compare(
                    &|_| Ok(cq.clone()),
                    &|p| {
                        let w = p + 8;
                        let iv = Interval::from_rational(&exactnum::rat(4, 5), w)
                            .scale2(i64::try_from(n).map_err(|_| Error::domain("n too large"))?)
                            .div(&sqrt(&Interval::from_u64(n), w)?, w)?;
                        Ok(Scalar::Enclosure(iv))
                    },
                    rel,
                    cap,
                )
            }
        }
        BoundId::Thm23 => {
            let (m, n) = (ps[0], ps[1]);
            let c = exact_nat(&binomial(n, n / m));
            adaptive_compare(
                &|_| Ok(c.clone()),
                &|p| Ok(Scalar::Enclosure(eval::thm23_rhs(m, n, p)?)),
                rel,
                cap,
            )
        }
        BoundId::Thm24Rational => {
            let (n, k) = (ps[0], ps[1]);
            if spec.mode == Mode::Exact {
                let a = six_n2(n) * eval::binom_weighted(n, k, ws)?;
                let lhs = ipow0(&a, 2);
                let coeff = six_n2(n) - Natural::from(k - n / 5) * Natural::from(5u32);
                let n2n1 = &ws.sp(n) * &ws.sp(n) / Natural::from(n);
                let rhs = ipow0(&coeff, 2) * n2n1;
                exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
            } else {
                let lhs = exact_nat(&eval::binom_weighted(n, k, ws)?);
                adaptive_compare(
                    &|_| Ok(lhs.clone()),
                    &|p| Ok(Scalar::Enclosure(eval::thm24_rational_rhs(n, k, p)?)),
                    rel,
                    cap,
                )
            }
        }
        BoundId::Thm24Exp => {
            let (n, k) = (ps[0], ps[1]);
            let lhs = exact_nat(&eval::binom_weighted(n, k, ws)?);
            adaptive_compare(
                &|_| Ok(lhs.clone()),
                &|p| Ok(Scalar::Enclosure(eval::thm24_exp_rhs(n, k, p)?)),
                rel,
                cap,
            )
        }
        BoundId::Thm24Pow2 => {
            let (n, k) = (ps[0], ps[1]);
            if spec.mode == Mode::Exact {
                let a = six_n2(n) * binomial(n, k);
                let lhs = ipow0(&a, 2) * Natural::from(n);
                let coeff = six_n2(n) - Natural::from(k - n / 5) * Natural::from(5u32);
                let rhs = ipow0(&coeff, 2) << (2 * n);
                exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
            } else {
                let c = exact_nat(&binomial(n, k));
                adaptive_compare(
                    &|_| Ok(c.clone()),
                    &|p| Ok(Scalar::Enclosure(eval::thm24_pow2_rhs(n, k, p)?)),
                    rel,
                    cap,
                )
            }
        }
        BoundId::Corollary21 => {
            let (n, k) = (ps[0], ps[1]);
            if spec.mode == Mode::Exact {
                let a = eval::binom_weighted(n, k, ws)?;
                let lhs = ipow0(&a, 2);
                let rhs = &ws.sp(n) * &ws.sp(n) / Natural::from(n);
                exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
            } else {
                let lhs = exact_nat(&eval::binom_weighted(n, k, ws)?);
                adaptive_compare(
                    &|_| Ok(lhs.clone()),
                    &|p| {
                        let w = p + 8;
                        let iv = Interval::from_natural(&ws.sp(n))
                            .div(&sqrt(&Interval::from_u64(n), w)?, w)?;
                        Ok(Scalar::Enclosure(iv))
                    },
                    rel,
                    cap,
                )
            }
        }
        BoundId::Lemma21Ratio => {
            let (n, k) = (ps[0], ps[1]);
            let g_next = eval::binom_weighted(n, k + 1, ws)?;
            let g_cur = exact_nat(&eval::binom_weighted(n, k, ws)?);
            adaptive_compare(
                &|p| {
                    let w = p + 8;
                    let grow = exp(
                        &Interval::from_rational(&Rational::new(bi(11), bi(12) * bi(n) * bi(n)), w),
                        w,
                    );
                    Ok(Scalar::Enclosure(grow.mul(&Interval::from_natural(&g_next), w)))
                },
                &|_| Ok(g_cur.clone()),
                rel,
                cap,
            )
        }
        BoundId::Lemma22 => {
            let (k, r) = (ps[0], ps[1]);
            let nn = 5 * k + r;
            let a = binomial(nn, k) * ws.sp(k) * ws.sp(4 * k + r);
            if spec.mode == Mode::Exact {
                let lhs = ipow0(&a, 2);
                let rhs = ipow(&Natural::from(nn), 2 * nn - 1)?;
                exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
            } else {
                let aq = exact_nat(&a);
                adaptive_compare(
                    &|_| Ok(aq.clone()),
                    &|p| {
                        let w = p + 8;
                        let iv = Interval::from_natural(&ipow(&Natural::from(nn), nn)?)
                            .div(&sqrt(&Interval::from_u64(nn), w)?, w)?;
                        Ok(Scalar::Enclosure(iv))
                    },
                    rel,
                    cap,
                )
            }
        }
        BoundId::Lemma23 => {
            let (n, k) = (ps[0], ps[1]);
            let lhs = ws.sp(n);
            let rhs = (ws.sp(k) * ws.sp(n - k)) << n;
            exactish_compare(&lhs, &rhs, rel, spec.mode, cap)
        }
        BoundId::Ineq21 => {
            let m = ps[0];
            let series = Rational::one() - Rational::new(BigInt::one(), bi(2) * bi(m))
                + Rational::new(BigInt::one(), bi(3) * bi(m) * bi(m))
                - Rational::new(BigInt::one(), bi(4) * bi(m) * bi(m) * bi(m));
            adaptive_compare(
                &|_| Ok(Scalar::Exact(series.clone())),
                &|p| {
                    let w = p + 8;
                    let lg = log(
                        &Interval::from_rational(&Rational::new(bi(m + 1), bi(m)), w),
                        w,
                    )?;
                    Ok(Scalar::Enclosure(lg.mul(&Interval::from_u64(m), w)))
                },
                rel,
                cap,
            )
        }
        BoundId::Ineq23 => {
            let m = ps[0];
            let series = -Rational::one()
                + Rational::new(BigInt::one(), bi(2) * bi(m))
                + Rational::new(BigInt::one(), bi(6) * bi(m) * bi(m))
                + Rational::new(BigInt::one(), bi(12) * bi(m) * bi(m) * bi(m));
            adaptive_compare(
                &|_| Ok(Scalar::Exact(series.clone())),
                &|p| {
                    let w = p + 8;
                    let lg = log(
                        &Interval::from_rational(&Rational::new(bi(m - 1), bi(m)), w),
                        w,
                    )?;
                    Ok(Scalar::Enclosure(lg.mul(&Interval::from_u64(m - 1), w)))
                },
                rel,
                cap,
            )
        }
        BoundId::Ineq25 => {
            let (n, k) = (ps[0], ps[1]);
            let (x, quad, lin) = ineq25_values(n, k);
            let a = adaptive_compare(
                &|p| {
                    let w = p + 8;
                    Ok(Scalar::Enclosure(exp(&Interval::from_rational(&-&x, w), w)))
                },
                &|_| Ok(Scalar::Exact(quad.clone())),
                rel,
                cap,
            )?;
            let b = adaptive_compare(
                &|_| Ok(Scalar::Exact(quad.clone())),
                &|_| Ok(Scalar::Exact(lin.clone())),
                rel,
                cap,
            )?;
            Ok(merge_conjunction(a, b))
        }
        BoundId::Ineq26 => {
            let (m, r, n) = (ps[0], ps[1], ps[2]);
            let (lower, prod, upper) = ineq26_values(m, r, n)?;
            // Canonical strictness is mixed: non-strict on the left leg,
            // strict on the right. An explicit override applies to both.
            let (rel_lo, rel_hi) = match spec.strictness {
                None => (Rel::Le, Rel::Lt),
                Some(s) => (rel_of(s), rel_of(s)),
            };
            let a = adaptive_compare(
                &|_| Ok(Scalar::Exact(lower.clone())),
                &|_| Ok(Scalar::Exact(prod.clone())),
                rel_lo,
                cap,
            )?;
            let b = adaptive_compare(
                &|_| Ok(Scalar::Exact(prod.clone())),
                &|_| Ok(Scalar::Exact(upper.clone())),
                rel_hi,
                cap,
            )?;
            Ok(merge_conjunction(a, b))
        }
        BoundId::Ineq27 => {
            let (k, r) = (ps[0], ps[1]);
            let (lhs, rhs_scale) = ineq27_parts(k, r)?;
            let l = exact_nat(&lhs);
            adaptive_compare(
                &|_| Ok(l.clone()),
                &|p| {
                    let w = p + 8;
                    Ok(Scalar::Enclosure(
                        pi_enclosure(w)
                            .powi(3, w)
                            .mul(&Interval::from_natural(&rhs_scale), w),
                    ))
                },
                rel,
                cap,
            )
        }
        BoundId::Ineq28 => {
            let n = ps[0];
            let f = search::f_of_n(n)?;
            let lhs = Natural::from(f);
            let rhs = Natural::from(n / 2 - 1);
            exactish_compare(&lhs, &rhs, rel, Mode::Exact, cap)
        }
    }
}

/// Compare two exact naturals either directly (exact mode) or through
/// rounded enclosures (interval mode; exercises the refinement loop).
fn exactish_compare(lhs: &Natural, rhs: &Natural, rel: Rel, mode: Mode, cap: u32) -> Result<Verdict> {
    match mode {
        Mode::Exact => {
            let lq = exact_nat(lhs);
            let rq = exact_nat(rhs);
            adaptive_compare(&|_| Ok(lq.clone()), &|_| Ok(rq.clone()), rel, cap)
        }
        Mode::Interval => {
            let (l, r) = (lhs.clone(), rhs.clone());
            adaptive_compare(
                &move |p| Ok(Scalar::Enclosure(Interval::from_natural(&l).round_to(p))),
                &move |p| Ok(Scalar::Enclosure(Interval::from_natural(&r).round_to(p))),
                rel,
                cap,
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Block sweeps
// ---------------------------------------------------------------------------

/// Options threaded through a block sweep.
#[derive(Debug, Clone)]
pub struct BlockOpts {
    pub cap: u32,
    pub strictness: Option<Strictness>,
    pub mode: Option<Mode>,
    pub witness_cap: usize,
    pub collect_rows: bool,
}

impl Default for BlockOpts {
    fn default() -> Self {
        BlockOpts {
            cap: crate::DEFAULT_PRECISION_CAP,
            strictness: None,
            mode: None,
            witness_cap: 100,
            collect_rows: false,
        }
    }
}

/// One row of a sweep, kept only when rows are collected.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub params: Vec<u64>,
    pub state: State,
    pub precision: u32,
    pub margin: Option<Interval>,
}

/// Aggregated result of one block (and, after merging, a whole sweep).
#[derive(Debug, Clone, Default)]
pub struct BlockOut {
    pub total: u64,
    pub holds: u64,
    pub fails: u64,
    pub undecided: u64,
    pub witnesses: Vec<Vec<u64>>,
    pub undecided_params: Vec<Vec<u64>>,
    pub max_precision: u32,
    pub rows: Option<Vec<CheckRow>>,
}

impl BlockOut {
    pub(crate) fn new(collect_rows: bool) -> Self {
        BlockOut {
            rows: if collect_rows { Some(Vec::new()) } else { None },
            ..BlockOut::default()
        }
    }

    fn record(&mut self, params: &[u64], state: State, precision: u32, margin: Option<Interval>, cap: usize) {
        self.total += 1;
        match state {
            State::Holds => self.holds += 1,
            State::Fails => {
                self.fails += 1;
                if self.witnesses.len() < cap {
                    self.witnesses.push(params.to_vec());
                }
            }
            State::Undecided => {
                self.undecided += 1;
                if self.undecided_params.len() < cap {
                    self.undecided_params.push(params.to_vec());
                }
            }
        }
        self.max_precision = self.max_precision.max(precision);
        if let Some(rows) = &mut self.rows {
            rows.push(CheckRow { params: params.to_vec(), state, precision, margin });
        }
    }

    pub(crate) fn record_verdict(&mut self, params: &[u64], v: &Verdict, cap: usize) {
        self.record(params, v.state, v.precision_used, v.margin.clone(), cap);
    }

    /// Merge a later block into this one, preserving enumeration order.
    pub fn merge(&mut self, other: BlockOut, witness_cap: usize) {
        self.total += other.total;
        self.holds += other.holds;
        self.fails += other.fails;
        self.undecided += other.undecided;
        for w in other.witnesses {
            if self.witnesses.len() < witness_cap {
                self.witnesses.push(w);
            }
        }
        for u in other.undecided_params {
            if self.undecided_params.len() < witness_cap {
                self.undecided_params.push(u);
            }
        }
        self.max_precision = self.max_precision.max(other.max_precision);
        if let (Some(rows), Some(more)) = (&mut self.rows, other.rows) {
            rows.extend(more);
        }
    }
}

/// Decide `lhs rel rhs` with `lhs` exact and `rhs` an enclosure, if the
/// enclosure separates. Exact comparison of dyadic endpoints — no rounding.
fn decide_nat_vs_iv(lhs: &Natural, rhs: &Interval, rel: Rel) -> Option<State> {
    decide_dyadic_vs_iv(&Dyadic::from_biguint(lhs.clone()), rhs, rel)
}

fn decide_dyadic_vs_iv(l: &Dyadic, rhs: &Interval, rel: Rel) -> Option<State> {
    use std::cmp::Ordering::*;
    match rel {
        Rel::Lt => {
            if l.cmp_value(rhs.lo()) == Less {
                Some(State::Holds)
            } else if l.cmp_value(rhs.hi()) != Less {
                Some(State::Fails)
            } else {
                None
            }
        }
        Rel::Le => {
            if l.cmp_value(rhs.lo()) != Greater {
                Some(State::Holds)
            } else if l.cmp_value(rhs.hi()) == Greater {
                Some(State::Fails)
            } else {
                None
            }
        }
    }
}

/// Mirror image: `lhs` an enclosure, `rhs` exact.
fn decide_iv_vs_nat(lhs: &Interval, rhs: &Natural, rel: Rel) -> Option<State> {
    use std::cmp::Ordering::*;
    let r = Dyadic::from_biguint(rhs.clone());
    match rel {
        Rel::Lt => {
            if lhs.hi().cmp_value(&r) == Less {
                Some(State::Holds)
            } else if lhs.lo().cmp_value(&r) != Less {
                Some(State::Fails)
            } else {
                None
            }
        }
        Rel::Le => {
            if lhs.hi().cmp_value(&r) != Greater {
                Some(State::Holds)
            } else if lhs.lo().cmp_value(&r) == Greater {
                Some(State::Fails)
            } else {
                None
            }
        }
    }
}

/// Sweep one block: fixed `prefix`, final parameter running over
/// `lo..=hi` with the given `step`. Blocks are built in-hypothesis by the
/// sweep planner; every point is still validated on the pointwise fallback
/// path. Returns aggregated counts, capped witness lists, and (optionally)
/// per-point rows.
pub fn check_block(
    bound: BoundId,
    prefix: &[u64],
    lo: u64,
    hi: u64,
    step: u64,
    ws: &Workspace,
    opts: &BlockOpts,
) -> Result<BlockOut> {
    if lo > hi || step == 0 {
        return Err(Error::domain("malformed block"));
    }
    let mode = opts.mode.unwrap_or(bound.default_mode());
    let mut out = BlockOut::new(opts.collect_rows);

    // Rows need margins, which only the pointwise path produces.
    if !opts.collect_rows {
        let done = match (bound, mode) {
            (
                BoundId::Thm21Rational
                | BoundId::Thm24Rational
                | BoundId::Thm24Pow2
                | BoundId::Corollary21
                | BoundId::Thm22Weak
                | BoundId::Lemma23,
                Mode::Exact,
            ) => {
                block_nk_exact(bound, prefix[0], lo, hi, ws, opts, &mut out)?;
                true
            }
            (
                BoundId::Thm21Exp | BoundId::Thm24Exp | BoundId::Thm22 | BoundId::Lemma21Ratio,
                Mode::Interval,
            ) => {
                block_nk_interval(bound, prefix[0], lo, hi, ws, opts, &mut out)?;
                true
            }
            (BoundId::RobbinsLower | BoundId::RobbinsUpper, Mode::Interval) => {
                block_robbins(bound, lo, hi, ws, opts, &mut out)?;
                true
            }
            (
                BoundId::HirschhornLower | BoundId::HirschhornUpper | BoundId::HirschhornRemainder,
                Mode::Interval,
            ) => {
                block_hirschhorn(bound, lo, hi, ws, opts, &mut out)?;
                true
            }
            (BoundId::Ineq28, Mode::Exact) => {
                block_threshold(lo, hi, opts, &mut out)?;
                true
            }
            _ => false,
        };
        if done {
            return Ok(out);
        }
    }

    // Generic path: full pointwise check per tuple.
    let mut v = lo;
    loop {
        let mut params = prefix.to_vec();
        params.push(v);
        let spec = CheckSpec {
            bound,
            params: params.clone(),
            mode,
            strictness: opts.strictness,
            precision_cap: opts.cap,
        };
        let verdict = check(&spec, ws)?;
        out.record_verdict(&params, &verdict, opts.witness_cap);
        match v.checked_add(step) {
            Some(next) if next <= hi => v = next,
            _ => break,
        }
    }
    Ok(out)
}

/// Pointwise fallback used by fast paths when the first-precision screen
/// does not separate.
fn fallback(
    bound: BoundId,
    params: &[u64],
    ws: &Workspace,
    opts: &BlockOpts,
    out: &mut BlockOut,
) -> Result<()> {
    let spec = CheckSpec {
        bound,
        params: params.to_vec(),
        mode: opts.mode.unwrap_or(bound.default_mode()),
        strictness: opts.strictness,
        precision_cap: opts.cap,
    };
    let verdict = check(&spec, ws)?;
    out.record_verdict(params, &verdict, opts.witness_cap);
    Ok(())
}

fn screen_precision(opts: &BlockOpts) -> u32 {
    opts.cap.min(64)
}

/// Exact-integer row sweeps over `k` for fixed `n`, with the binomial
/// updated incrementally.
fn block_nk_exact(
    bound: BoundId,
    n: u64,
    k_lo: u64,
    k_hi: u64,
    ws: &Workspace,
    opts: &BlockOpts,
    out: &mut BlockOut,
) -> Result<()> {
    let rel = rel_of(opts.strictness.unwrap_or(bound.canonical_strictness()));
    let six = six_n2(n);
    // Row constants.
    let row: Natural = match bound {
        BoundId::Thm21Rational => Natural::from(n) * ws.sp(n - 1),
        BoundId::Thm24Rational | BoundId::Corollary21 => &ws.sp(n) * &ws.sp(n) / Natural::from(n),
        BoundId::Thm24Pow2 => Natural::one() << (2 * n),
        BoundId::Thm22Weak => Natural::one() << (2 * n + 4),
        BoundId::Lemma23 => ws.sp(n),
        _ => unreachable!(),
    };
    let mut c = binomial(n, k_lo);
    let mut k = k_lo;
    loop {
        let (lhs, rhs): (Natural, Natural) = match bound {
            BoundId::Thm21Rational => {
                let lhs = &six * &c * ws.sp(k) * ws.sp(n - k);
                let coeff = &six - Natural::from(k - 1) * Natural::from(5u32);
                (lhs, coeff * &row)
            }
            BoundId::Thm24Rational => {
                let a = &six * &c * ws.sp(k) * ws.sp(n - k);
                let coeff = &six - Natural::from(k - n / 5) * Natural::from(5u32);
                (ipow0(&a, 2), ipow0(&coeff, 2) * &row)
            }
            BoundId::Thm24Pow2 => {
                let a = &six * &c;
                let coeff = &six - Natural::from(k - n / 5) * Natural::from(5u32);
                (ipow0(&a, 2) * Natural::from(n), ipow0(&coeff, 2) * &row)
            }
            BoundId::Corollary21 => {
                let a = &c * ws.sp(k) * ws.sp(n - k);
                (ipow0(&a, 2), row.clone())
            }
            BoundId::Thm22Weak => {
                let lhs = Natural::from(25u32) * &c * &c * Natural::from(n);
                (lhs, row.clone())
            }
            BoundId::Lemma23 => {
                let rhs = (ws.sp(k) * ws.sp(n - k)) << n;
                (row.clone(), rhs)
            }
            _ => unreachable!(),
        };
        let holds = match rel {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
        };
        let state = if holds { State::Holds } else { State::Fails };
        out.record(&[n, k], state, 0, None, opts.witness_cap);
        if k == k_hi {
            break;
        }
        c = c * Natural::from(n - k) / Natural::from(k + 1);
        k += 1;
    }
    Ok(())
}

/// Interval row sweeps over `k` for fixed `n`: exact left side against a
/// row- or point-level enclosure, with full refinement only on demand.
fn block_nk_interval(
    bound: BoundId,
    n: u64,
    k_lo: u64,
    k_hi: u64,
    ws: &Workspace,
    opts: &BlockOpts,
    out: &mut BlockOut,
) -> Result<()> {
    let rel = rel_of(opts.strictness.unwrap_or(bound.canonical_strictness()));
    let p0 = screen_precision(opts);
    let w = p0 + 8;
    enum Row {
        Thm21 { base: Interval },
        Thm24 { base: Interval },
        Thm22 { rhs: Interval },
        Lemma21 { grow: Interval, g_cur: Natural, c_next: Natural },
    }
    let mut row = match bound {
        BoundId::Thm21Exp => Row::Thm21 {
            base: Interval::from_natural(&(Natural::from(n) * ws.sp(n - 1))),
        },
        BoundId::Thm24Exp => Row::Thm24 {
            base: Interval::from_natural(&ws.sp(n)).div(&sqrt(&Interval::from_u64(n), w)?, w)?,
        },
        BoundId::Thm22 => Row::Thm22 { rhs: eval::thm22_rhs(n, p0)? },
        BoundId::Lemma21Ratio => Row::Lemma21 {
            grow: exp(
                &Interval::from_rational(&Rational::new(bi(11), bi(12) * bi(n) * bi(n)), w),
                w,
            ),
            g_cur: eval::binom_weighted(n, k_lo, ws)?,
            c_next: binomial(n, k_lo + 1),
        },
        _ => unreachable!(),
    };
    let mut c = binomial(n, k_lo);
    let mut k = k_lo;
    loop {
        let decided: Option<State> = match &mut row {
            Row::Thm21 { base } => {
                let lhs = &c * ws.sp(k) * ws.sp(n - k);
                let e = exp(
                    &Interval::from_rational(
                        &Rational::new(-(bi(11) * bi(k - 1)), bi(12) * bi(n) * bi(n)),
                        w,
                    ),
                    w,
                );
                decide_nat_vs_iv(&lhs, &e.mul(base, w), rel)
            }
            Row::Thm24 { base } => {
                let lhs = &c * ws.sp(k) * ws.sp(n - k);
                let e = exp(
                    &Interval::from_rational(
                        &Rational::new(-(bi(11) * bi(k - n / 5)), bi(12) * bi(n) * bi(n)),
                        w,
                    ),
                    w,
                );
                decide_nat_vs_iv(&lhs, &e.mul(base, w), rel)
            }
            Row::Thm22 { rhs } => decide_nat_vs_iv(&c, rhs, rel),
            Row::Lemma21 { grow, g_cur, c_next } => {
                let g_next = &*c_next * ws.sp(k + 1) * ws.sp(n - k - 1);
                let lhs = grow.mul(&Interval::from_natural(&g_next), w);
                let d = decide_iv_vs_nat(&lhs, g_cur, rel);
                *g_cur = g_next;
                *c_next = c_next.clone() * Natural::from(n - k - 1) / Natural::from(k + 2);
                d
            }
        };
        match decided {
            Some(state) => out.record(&[n, k], state, p0, None, opts.witness_cap),
            None => fallback(bound, &[n, k], ws, opts, out)?,
        }
        if k == k_hi {
            break;
        }
        c = c * Natural::from(n - k) / Natural::from(k + 1);
        k += 1;
    }
    Ok(())
}

/// Factorial bounds over a run of consecutive `n`, with the factorial
/// carried incrementally.
fn block_robbins(
    bound: BoundId,
    lo: u64,
    hi: u64,
    ws: &Workspace,
    opts: &BlockOpts,
    out: &mut BlockOut,
) -> Result<()> {
    let rel = rel_of(opts.strictness.unwrap_or(bound.canonical_strictness()));
    let p0 = screen_precision(opts);
    let w = p0 + 8;
    let mut fact = factorial(lo);
    for n in lo..=hi {
        let root = sqrt(
            &pi_enclosure(w).mul(&Interval::from_natural(&(Natural::from(n) * Natural::from(2u32))), w),
            w,
        )?;
        let base = root.mul(&Interval::from_natural(&ws.sp(n)), w);
        let arg = if bound == BoundId::RobbinsLower {
            Rational::new(BigInt::one(), bi(12) * bi(n) + 1) - nat_to_rational(&Natural::from(n))
        } else {
            Rational::new(BigInt::one(), bi(12) * bi(n)) - nat_to_rational(&Natural::from(n))
        };
        let side = base.mul(&exp(&Interval::from_rational(&arg, w), w), w);
        let decided = if bound == BoundId::RobbinsLower {
            decide_iv_vs_nat(&side, &fact, rel)
        } else {
            decide_nat_vs_iv(&fact, &side, rel)
        };
        match decided {
            Some(state) => out.record(&[n], state, p0, None, opts.witness_cap),
            None => fallback(bound, &[n], ws, opts, out)?,
        }
        if n < hi {
            fact *= Natural::from(n + 1);
        }
    }
    Ok(())
}

fn decide_iv_vs_iv(a: &Interval, b: &Interval, rel: Rel) -> Option<State> {
    use std::cmp::Ordering::*;
    match rel {
        Rel::Lt => {
            if a.hi().cmp_value(b.lo()) == Less {
                Some(State::Holds)
            } else if b.hi().cmp_value(a.lo()) != Greater {
                Some(State::Fails)
            } else {
                None
            }
        }
        Rel::Le => {
            if a.hi().cmp_value(b.lo()) != Greater {
                Some(State::Holds)
            } else if b.hi().cmp_value(a.lo()) == Less {
                Some(State::Fails)
            } else {
                None
            }
        }
    }
}

/// Sixth-power factorial bounds and the remainder window over consecutive
/// `n`.
fn block_hirschhorn(
    bound: BoundId,
    lo: u64,
    hi: u64,
    ws: &Workspace,
    opts: &BlockOpts,
    out: &mut BlockOut,
) -> Result<()> {
    let rel = rel_of(opts.strictness.unwrap_or(bound.canonical_strictness()));
    let p0 = screen_precision(opts);
    let w = p0 + 8;
    let pi3 = pi_enclosure(w).powi(3, w);
    let mut fact = factorial(lo);
    let five = Natural::from(5u32);
    let eleven = Natural::from(11u32);
    for n in lo..=hi {
        let decided: Option<State> = match bound {
            BoundId::HirschhornRemainder => {
                let r = eval::hirschhorn_r_with(n, &fact, p0)?;
                let a = decide_nat_vs_iv(&five, &r, rel);
                let b = decide_iv_vs_nat(&r, &eleven, rel);
                match (a, b) {
                    (Some(State::Fails), _) | (_, Some(State::Fails)) => Some(State::Fails),
                    (Some(State::Holds), Some(State::Holds)) => Some(State::Holds),
                    _ => None,
                }
            }
            _ => {
                let f6 = ipow(&fact, 6)?;
                let n6n = ipow0(&ws.sp(n), 6);
                let e6n = exp(
                    &Interval::from_natural(&(Natural::from(n) * Natural::from(6u32))),
                    w,
                );
                let (poly_lo, poly_hi) = eval::hirschhorn_polys(n);
                if bound == BoundId::HirschhornLower {
                    let lhs = pi3.mul(&Interval::from_natural(&(poly_lo * &n6n)), w);
                    let rhs = Interval::from_natural(&f6).mul(&e6n, w);
                    decide_iv_vs_iv(&lhs, &rhs, rel)
                } else {
                    let lhs = Interval::from_natural(&(Natural::from(30u32) * &f6)).mul(&e6n, w);
                    let rhs = pi3.mul(&Interval::from_natural(&(poly_hi * &n6n)), w);
                    decide_iv_vs_iv(&lhs, &rhs, rel)
                }
            }
        };
        match decided {
            Some(state) => out.record(&[n], state, p0, None, opts.witness_cap),
            None => fallback(bound, &[n], ws, opts, out)?,
        }
        if n < hi {
            fact *= Natural::from(n + 1);
        }
    }
    Ok(())
}

/// Threshold comparison `f(n) <= floor(n/2) - 1` with warm-started `f`.
fn block_threshold(lo: u64, hi: u64, opts: &BlockOpts, out: &mut BlockOut) -> Result<()> {
    let rel = rel_of(opts.strictness.unwrap_or(Strictness::NonStrict));
    let mut hint: Option<u64> = None;
    for n in lo..=hi {
        let f = match hint {
            Some(_) => search::f_unchecked(n, hint),
            None => search::f_of_n(n)?,
        };
        let holds = match rel {
            Rel::Lt => f < n / 2 - 1,
            Rel::Le => f <= n / 2 - 1,
        };
        let state = if holds { State::Holds } else { State::Fails };
        out.record(&[n], state, 0, None, opts.witness_cap);
        hint = Some(f);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ws() -> Workspace {
        Workspace::with_self_pow(512)
    }

    fn run(bound: BoundId, params: &[u64]) -> Verdict {
        check(&CheckSpec::new(bound, params), &ws()).unwrap()
    }

    #[test]
    fn spec_examples_hold() {
        // 6*4^2 * C(4,2) * 2^2 * 2^2 = 9216 < 9828 = 91 * 4 * 27.
        let v = run(BoundId::Thm21Rational, &[4, 2]);
        assert_eq!(v.state, State::Holds);
        assert_eq!(v.precision_used, 0);
        let m = v.margin.unwrap();
        assert!(m.contains_rational(&rat(9828 - 9216, 96)) || m.strictly_positive());

        assert_eq!(run(BoundId::Thm21Rational, &[10, 5]).state, State::Holds);
        assert_eq!(run(BoundId::Thm21Exp, &[4, 2]).state, State::Holds);
        assert_eq!(run(BoundId::Thm21Exp, &[10, 5]).state, State::Holds);
        assert_eq!(run(BoundId::Thm22, &[1, 0]).state, State::Holds);
        assert_eq!(run(BoundId::Thm22, &[4, 2]).state, State::Holds);
        assert_eq!(run(BoundId::Thm22Weak, &[4, 2]).state, State::Holds);
        assert_eq!(run(BoundId::Thm23, &[3, 5]).state, State::Holds);
        assert_eq!(run(BoundId::Thm23, &[3, 6]).state, State::Holds);
        assert_eq!(run(BoundId::Thm23, &[4, 12]).state, State::Holds);
        assert_eq!(run(BoundId::Thm24Rational, &[400, 80]).state, State::Holds);
        assert_eq!(run(BoundId::Thm24Exp, &[400, 80]).state, State::Holds);
        assert_eq!(run(BoundId::Thm24Pow2, &[400, 200]).state, State::Holds);
        assert_eq!(run(BoundId::Corollary21, &[400, 320]).state, State::Holds);
        assert_eq!(run(BoundId::Lemma21Ratio, &[3, 0]).state, State::Holds);
        assert_eq!(run(BoundId::Lemma22, &[80, 0]).state, State::Holds);
        assert_eq!(run(BoundId::Lemma22, &[80, 4]).state, State::Holds);
        assert_eq!(run(BoundId::RobbinsLower, &[1]).state, State::Holds);
        assert_eq!(run(BoundId::RobbinsUpper, &[1]).state, State::Holds);
        assert_eq!(run(BoundId::RobbinsLower, &[10]).state, State::Holds);
        assert_eq!(run(BoundId::HirschhornLower, &[2]).state, State::Holds);
        assert_eq!(run(BoundId::HirschhornUpper, &[2]).state, State::Holds);
        assert_eq!(run(BoundId::HirschhornRemainder, &[2]).state, State::Holds);
        assert_eq!(run(BoundId::Eq12Upper, &[2, 1]).state, State::Holds);
        assert_eq!(run(BoundId::Eq12Upper, &[2, 5]).state, State::Holds);
        assert_eq!(run(BoundId::StanicaLower, &[3, 2, 1]).state, State::Holds);
        assert_eq!(run(BoundId::StanicaUpper, &[3, 2, 1]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq21, &[1]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq23, &[2]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq25, &[4, 2]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq26, &[5, 1, 11]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq27, &[201, 2]).state, State::Holds);
        assert_eq!(run(BoundId::Ineq28, &[19]).state, State::Holds);
    }

    #[test]
    fn lemma23_equality_structure() {
        // Non-strict holds everywhere; equality exactly at k = n/2.
        assert_eq!(run(BoundId::Lemma23, &[4, 2]).state, State::Holds);
        let strict = check(
            &CheckSpec::new(BoundId::Lemma23, &[4, 2]).with_strictness(Strictness::Strict),
            &ws(),
        )
        .unwrap();
        assert_eq!(strict.state, State::Fails);
        assert_eq!(strict.witness, Some(vec![4, 2]));
        let strict_off = check(
            &CheckSpec::new(BoundId::Lemma23, &[5, 2]).with_strictness(Strictness::Strict),
            &ws(),
        )
        .unwrap();
        assert_eq!(strict_off.state, State::Holds);
        // k = 0 and k = n are strict: n^n < 2^n n^n.
        let edge = check(
            &CheckSpec::new(BoundId::Lemma23, &[6, 0]).with_strictness(Strictness::Strict),
            &ws(),
        )
        .unwrap();
        assert_eq!(edge.state, State::Holds);
    }

    #[test]
    fn ineq26_mixed_strictness() {
        // (5,1,11): 55/48 <= 11/9 < 5/4, the left leg strictly here.
        let (lo, prod, hi) = ineq26_values(5, 1, 11).unwrap();
        assert_eq!(lo, rat(55, 48));
        assert_eq!(prod, rat(11, 9));
        assert_eq!(hi, rat(5, 4));
        assert_eq!(run(BoundId::Ineq26, &[5, 1, 11]).state, State::Holds);
        // n = r: the product is empty of growth — equal legs stay fine
        // under the canonical mixed strictness.
        assert_eq!(run(BoundId::Ineq26, &[5, 2, 2]).state, State::Holds);
    }

    #[test]
    fn ineq26_left_leg_equality_cases() {
        // r = m-1 with n = r: product = 1... scan a few stepped tuples and
        // make sure the canonical form never fails across them.
        for m in 3..=6u64 {
            for r in 1..m {
                for i in 0..4u64 {
                    let n = r + i * m;
                    let v = run(BoundId::Ineq26, &[m, r, n]);
                    assert_eq!(v.state, State::Holds, "({m},{r},{n})");
                }
            }
        }
    }

    #[test]
    fn undecided_at_tiny_cap() {
        // Robbins' upper bound exceeds 1000! by only ~e^(1/12000)-e^(θ);
        // a 16-bit enclosure cannot separate that.
        let v = check(
            &CheckSpec::new(BoundId::RobbinsUpper, &[1000]).with_cap(16),
            &ws(),
        )
        .unwrap();
        assert_eq!(v.state, State::Undecided);
        assert_eq!(v.precision_used, 16);
        assert!(v.margin.unwrap().contains_zero());
        // The same point decides comfortably at the default cap.
        let v = run(BoundId::RobbinsUpper, &[1000]);
        assert_eq!(v.state, State::Holds);
        assert!(v.precision_used <= 1024);
    }

    #[test]
    fn mode_gates() {
        let err = check(
            &CheckSpec::new(BoundId::RobbinsLower, &[3]).with_mode(Mode::Exact),
            &ws(),
        );
        assert!(err.is_err());
        let err = check(
            &CheckSpec::new(BoundId::Ineq28, &[19]).with_mode(Mode::Interval),
            &ws(),
        );
        assert!(err.is_err());
        // Interval mode on an exact-capable bound agrees with exact mode.
        let e = check(&CheckSpec::new(BoundId::Lemma22, &[80, 1]), &ws()).unwrap();
        let i = check(
            &CheckSpec::new(BoundId::Lemma22, &[80, 1]).with_mode(Mode::Interval),
            &ws(),
        )
        .unwrap();
        assert_eq!(e.state, State::Holds);
        assert_eq!(i.state, State::Holds);
        assert_eq!(e.precision_used, 0);
        assert!(i.precision_used >= 64);
    }

    #[test]
    fn out_of_hypothesis_rejected() {
        assert!(check(&CheckSpec::new(BoundId::Thm21Rational, &[4, 1]), &ws()).is_err());
        assert!(check(&CheckSpec::new(BoundId::Thm21Rational, &[3, 2]), &ws()).is_err());
        assert!(check(&CheckSpec::new(BoundId::Lemma22, &[79, 0]), &ws()).is_err());
        assert!(check(&CheckSpec::new(BoundId::Ineq26, &[5, 1, 12]), &ws()).is_err());
    }

    #[test]
    fn cleared_parts_degenerate_at_k1() {
        let w = ws();
        for n in [4u64, 9, 20] {
            let (lhs, rhs) = thm21_cleared_parts(n, 1, &w).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
        let (lhs, rhs) = thm21_cleared_parts(10, 2, &w).unwrap();
        assert!(lhs < rhs);
    }

    #[test]
    fn blocks_match_pointwise() {
        let w = ws();
        let opts = BlockOpts::default();
        // Exact row path.
        let b = check_block(BoundId::Thm21Rational, &[40], 2, 20, 1, &w, &opts).unwrap();
        assert_eq!(b.total, 19);
        assert_eq!(b.holds, 19);
        assert_eq!(b.fails, 0);
        // Interval row paths.
        for bound in [BoundId::Thm21Exp, BoundId::Thm22, BoundId::Lemma21Ratio] {
            let (lo, hi) = match bound {
                BoundId::Thm21Exp => (2, 20),
                BoundId::Thm22 => (0, 40),
                _ => (0, 19),
            };
            let b = check_block(bound, &[40], lo, hi, 1, &w, &opts).unwrap();
            assert_eq!(b.total, hi - lo + 1, "{bound}");
            assert_eq!(b.fails, 0, "{bound}");
            assert_eq!(b.undecided, 0, "{bound}");
        }
        // 1-parameter paths.
        let b = check_block(BoundId::RobbinsLower, &[], 1, 50, 1, &w, &opts).unwrap();
        assert_eq!((b.total, b.holds), (50, 50));
        let b = check_block(BoundId::HirschhornRemainder, &[], 2, 40, 1, &w, &opts).unwrap();
        assert_eq!((b.total, b.holds), (39, 39));
        let b = check_block(BoundId::Ineq28, &[], 6, 100, 1, &w, &opts).unwrap();
        assert_eq!((b.total, b.holds), (95, 95));
        // Stepped generic path: n ≡ 2 (mod 5).
        let b = check_block(BoundId::Ineq26, &[5, 2], 2, 47, 5, &w, &opts).unwrap();
        assert_eq!(b.total, 10);
        assert_eq!(b.holds, 10);
    }

    #[test]
    fn block_rows_carry_margins() {
        let w = ws();
        let opts = BlockOpts { collect_rows: true, ..BlockOpts::default() };
        let b = check_block(BoundId::Thm21Rational, &[10], 2, 5, 1, &w, &opts).unwrap();
        let rows = b.rows.unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert_eq!(row.state, State::Holds);
            assert!(row.margin.as_ref().unwrap().strictly_positive());
        }
        assert_eq!(rows[0].params, vec![10, 2]);
    }

    #[test]
    fn strict_override_finds_equalities() {
        let w = ws();
        let opts = BlockOpts {
            strictness: Some(Strictness::Strict),
            ..BlockOpts::default()
        };
        let b = check_block(BoundId::Lemma23, &[6], 0, 6, 1, &w, &opts).unwrap();
        assert_eq!(b.fails, 1);
        assert_eq!(b.witnesses, vec![vec![6, 3]]);
        let b = check_block(BoundId::Lemma23, &[7], 0, 7, 1, &w, &opts).unwrap();
        assert_eq!(b.fails, 0);
    }
}
