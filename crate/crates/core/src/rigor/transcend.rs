//! Enclosures of `exp`, `log`, `sqrt`, real powers and the constants
//! `pi`, `e`, `ln 2`.
//!
//! Strategy: reduce the argument into a small range with exact dyadic
//! shifts, sum a truncated series in interval arithmetic at a padded working
//! precision, and fold the analytic tail bound into the interval as an
//! explicit `[-R, R]` (or `[0, R]`) term before undoing the reduction. The
//! enclosure property therefore never depends on unstated rounding claims:
//! every step is either exact, outward-rounded, or an explicit remainder.

use num_bigint::BigUint;
use std::cell::RefCell;
use std::collections::HashMap;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use crate::error::Error;

/// Hard ceiling on series iterations; reaching it would mean a broken
/// reduction step, not a slow series.
const MAX_TERMS: u64 = 1 << 22;

fn symmetric_pad(w: u32) -> Interval {
    let r = Dyadic::pow2(-(w as i64));
    Interval::new(r.neg(), r, w)
}

/// Enclosure of `e^x` for a single dyadic argument.
fn exp_point_enclosure(x: &Dyadic, p: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Dyadic::one());
    }
    let order = x.order().unwrap();
    assert!(order < (1 << 24), "exp argument out of supported range");
    let k = (order + 3).max(0) as u32;
    let w = p + 24 + k;
    let t = Interval::point(x.shl2(-(k as i64)));
    // |t| <= 1/4, so terms shrink by at least 4x per step.
    let mut sum = Interval::from_u64(1);
    let mut term = Interval::from_u64(1);
    let mut i = 1u64;
    loop {
        term = term.mul(&t, w).div_u64(i, w);
        sum = sum.add(&term, w);
        // Tail after term i: sum_{j>i} |t|^j/j! <= |term_i| * (1/4)/(1-1/4)
        //                  = |term_i|/3 < 2^-(w+2) once |term_i| < 2^-(w+2).
        if term.mag_order().map_or(true, |o| o < -(w as i64 + 2)) {
            sum = sum.add(&symmetric_pad(w + 2), w);
            break;
        }
        i += 1;
        assert!(i < MAX_TERMS, "exp series failed to converge");
    }
    for _ in 0..k {
        sum = sum.mul(&sum, w);
    }
    sum.round_to(p)
}

/// Enclosure of `e^x` over an interval (monotone transfer to endpoints).
pub fn exp(x: &Interval, p: u32) -> Interval {
    if x.lo() == x.hi() {
        return exp_point_enclosure(x.lo(), p);
    }
    let lo = exp_point_enclosure(x.lo(), p);
    let hi = exp_point_enclosure(x.hi(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone(), p)
}

/// atanh series `u + u^3/3 + u^5/5 + ...` for an interval `|u| <= 1/5`.
fn atanh_small(u: &Interval, w: u32) -> Interval {
    if u.lo().is_zero() && u.hi().is_zero() {
        return Interval::point(Dyadic::zero());
    }
    let u2 = u.mul(u, w);
    let mut sum = u.clone();
    let mut upow = u.clone();
    let mut j = 1u64;
    loop {
        upow = upow.mul(&u2, w);
        let term = upow.div_u64(2 * j + 1, w);
        sum = sum.add(&term, w);
        // Tail: sum_{i>j} |u|^(2i+1)/(2i+1) <= |u^(2j+3)|/(1-|u|^2)
        //     <= mag(upow) * (1/25)*(25/24) < 2^-(w+4) at the stop.
        if upow.mag_order().map_or(true, |o| o < -(w as i64 + 4)) {
            sum = sum.add(&symmetric_pad(w + 4), w);
            break;
        }
        j += 1;
        assert!(j < MAX_TERMS, "atanh series failed to converge");
    }
    sum
}

/// Enclosure of `log x` for a single positive dyadic.
fn log_point_enclosure(x: &Dyadic, p: u32) -> Result<Interval, Error> {
    if x.signum() <= 0 {
        return Err(Error::domain("log of a non-positive value"));
    }
    // x = f * 2^e2 with f in [1/2, 1), then f in [2/3, 4/3).
    let bits = x.bits() as i64;
    let mut e2 = x.order().unwrap() + 1;
    let mut f = x.shl2(-e2);
    let f3 = f.mul_exact(&Dyadic::from_u64(3));
    if f3 < Dyadic::from_u64(2) {
        f = f.shl2(1);
        e2 -= 1;
    }
    let _ = bits;
    let e2_bits = 64 - (e2.unsigned_abs().leading_zeros());
    let w = p + 28 + e2_bits;
    // u = (f-1)/(f+1) in [-1/5, 1/7]; log f = 2 atanh u.
    let num = Interval::point(f.sub_exact(&Dyadic::one()));
    let den = Interval::point(f.add_exact(&Dyadic::one()));
    let u = num.div(&den, w)?;
    let logf = atanh_small(&u, w).scale2(1);
    let result = if e2 == 0 {
        logf
    } else {
        ln2_enclosure(w).mul_dyadic(&Dyadic::from_i64(e2), w).add(&logf, w)
    };
    Ok(result.round_to(p))
}

/// Enclosure of `log x` over an interval with `x.lo > 0`.
pub fn log(x: &Interval, p: u32) -> Result<Interval, Error> {
    if x.lo().signum() <= 0 {
        return Err(Error::domain("log requires a strictly positive interval"));
    }
    if x.lo() == x.hi() {
        return log_point_enclosure(x.lo(), p);
    }
    let lo = log_point_enclosure(x.lo(), p)?;
    let hi = log_point_enclosure(x.hi(), p)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// Enclosure of `sqrt x` over an interval with `x.lo >= 0`.
pub fn sqrt(x: &Interval, p: u32) -> Result<Interval, Error> {
    if x.lo().signum() < 0 {
        return Err(Error::domain("sqrt of an interval with negative lower endpoint"));
    }
    Ok(Interval::new(x.lo().sqrt_round(p, Round::Down), x.hi().sqrt_round(p, Round::Up), p))
}

/// Enclosure of `x^y = exp(y log x)` for `x.lo > 0`.
pub fn pow(x: &Interval, y: &Interval, p: u32) -> Result<Interval, Error> {
    let w = p + 16;
    let lx = log(x, w)?;
    Ok(exp(&y.mul(&lx, w), p))
}

fn cached(kind: u8, p: u32, compute: impl FnOnce() -> Interval) -> Interval {
    thread_local! {
        static CACHE: RefCell<HashMap<(u8, u32), Interval>> = RefCell::new(HashMap::new());
    }
    CACHE.with(|c| {
        if let Some(v) = c.borrow().get(&(kind, p)) {
            return v.clone();
        }
        let v = compute();
        c.borrow_mut().insert((kind, p), v.clone());
        v
    })
}

/// `atan(1/m)` by the alternating inverse-power series.
fn atan_inv(m: u64, w: u32) -> Interval {
    let m2 = BigUint::from(m) * BigUint::from(m);
    let mut mpow = BigUint::from(m);
    let mut sum = Interval::point(Dyadic::zero());
    let mut j = 0u64;
    let mut positive = true;
    loop {
        let denom = Dyadic::from_biguint(&mpow * BigUint::from(2 * j + 1));
        let term = Interval::new(
            Dyadic::one().div_round(&denom, w, Round::Down),
            Dyadic::one().div_round(&denom, w, Round::Up),
            w,
        );
        sum = if positive { sum.add(&term, w) } else { sum.sub(&term, w) };
        // Alternating with decreasing terms: |tail| <= first omitted term
        // <= mag(term)/m^2 < 2^-(w+4) at the stop.
        if term.mag_order().map_or(true, |o| o < -(w as i64 + 4)) {
            sum = sum.add(&symmetric_pad(w + 4), w);
            break;
        }
        mpow *= &m2;
        positive = !positive;
        j += 1;
        assert!(j < MAX_TERMS, "atan series failed to converge");
    }
    sum
}

/// Enclosure of `pi` (Machin: `16 atan(1/5) - 4 atan(1/239)`).
pub fn pi_enclosure(p: u32) -> Interval {
    cached(0, p, || {
        let w = p + 32;
        let a = atan_inv(5, w).mul_dyadic(&Dyadic::from_u64(16), w);
        let b = atan_inv(239, w).mul_dyadic(&Dyadic::from_u64(4), w);
        a.sub(&b, w).round_to(p)
    })
}

/// Enclosure of `e` (`sum 1/i!` with an explicit tail).
pub fn e_enclosure(p: u32) -> Interval {
    cached(1, p, || {
        let w = p + 28;
        let mut sum = Interval::from_u64(2);
        let mut fact = BigUint::from(2u32);
        let mut i = 2u64;
        loop {
            let denom = Dyadic::from_biguint(fact.clone());
            let term = Interval::new(
                Dyadic::one().div_round(&denom, w, Round::Down),
                Dyadic::one().div_round(&denom, w, Round::Up),
                w,
            );
            sum = sum.add(&term, w);
            // Tail: sum_{j>i} 1/j! <= (2/(i+1)) * 1/i! <= mag(term) < 2^-(w+4).
            if term.mag_order().map_or(true, |o| o < -(w as i64 + 4)) {
                let pad = Interval::new(Dyadic::zero(), Dyadic::pow2(-(w as i64 + 4)), w);
                sum = sum.add(&pad, w);
                break;
            }
            i += 1;
            fact *= BigUint::from(i);
            assert!(i < MAX_TERMS, "e series failed to converge");
        }
        sum.round_to(p)
    })
}

/// Enclosure of `ln 2 = 2 atanh(1/3)`.
pub fn ln2_enclosure(p: u32) -> Interval {
    cached(2, p, || {
        let w = p + 24;
        let third = Interval::new(
            Dyadic::one().div_round(&Dyadic::from_u64(3), w, Round::Down),
            Dyadic::one().div_round(&Dyadic::from_u64(3), w, Round::Up),
            w,
        );
        atanh_small(&third, w).scale2(1).round_to(p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rational};
    use num_bigint::BigInt;

    /// Parse a decimal literal into an exact rational (test helper).
    fn dec(s: &str) -> Rational {
        let neg = s.starts_with('-');
        let s = s.trim_start_matches('-');
        let (int, frac) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let digits: String = format!("{int}{frac}");
        let num: BigInt = digits.parse().unwrap();
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let q = Rational::new(num, den);
        if neg {
            -q
        } else {
            q
        }
    }

    fn ulp_bound(order: i64, p: u32, ulps: i64) -> Dyadic {
        // `ulps` units in the last place for a value of the given order.
        Dyadic::from_i64(ulps).shl2(order - p as i64 + 1)
    }

    /// The enclosure must intersect a `10^-eps_digits` window around a
    /// truncated decimal reference. (Containment of the reference itself
    /// only makes sense while the enclosure is wider than the reference's
    /// own truncation error.)
    fn assert_near(iv: &Interval, reference: &Rational, eps_digits: u32, what: &str) {
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(eps_digits));
        assert!(iv.lo().to_rational() < reference + &eps, "{what}: lower endpoint too high");
        assert!(iv.hi().to_rational() > reference - &eps, "{what}: upper endpoint too low");
    }

    #[test]
    fn pi_digits_and_width() {
        let reference =
            dec("3.141592653589793238462643383279502884197169399375105820974944592307816");
        for p in [64u32, 128, 256, 1024] {
            let pi = pi_enclosure(p);
            assert_near(&pi, &reference, 69, "pi");
            assert!(pi.width() <= ulp_bound(1, p, 4), "pi width at {p} bits");
            if p <= 192 {
                assert!(pi.contains_rational(&reference), "pi at {p} bits");
            }
        }
        // doubling the precision strictly narrows, and enclosures nest
        assert!(pi_enclosure(128).width() < pi_enclosure(64).width());
        assert!(pi_enclosure(128).is_subset_of(&pi_enclosure(64)));
        assert!(pi_enclosure(1024).is_subset_of(&pi_enclosure(256)));
        // 64-bit endpoints agree with 3.14159265358979... on both sides
        let (lo, hi) = pi_enclosure(64).to_decimal_pair(15);
        assert_eq!(lo, "3.14159265358979");
        assert_eq!(hi, "3.14159265358980");
    }

    #[test]
    fn e_digits_and_width() {
        let reference =
            dec("2.718281828459045235360287471352662497757247093699959574966967627724077");
        for p in [64u32, 128, 256, 1024] {
            let e = e_enclosure(p);
            assert_near(&e, &reference, 69, "e");
            assert!(e.width() <= ulp_bound(1, p, 4), "e width at {p} bits");
            if p <= 192 {
                assert!(e.contains_rational(&reference), "e at {p} bits");
            }
        }
        assert!(e_enclosure(256).is_subset_of(&e_enclosure(64)));
        assert!(e_enclosure(1024).is_subset_of(&e_enclosure(256)));
    }

    #[test]
    fn ln2_digits() {
        let reference =
            dec("0.6931471805599453094172321214581765680755001343602552541206800094933936");
        for p in [64u32, 192] {
            let l = ln2_enclosure(p);
            assert!(l.contains_rational(&reference), "ln2 at {p} bits");
            assert!(l.width() <= ulp_bound(-1, p, 4));
        }
        let fine = ln2_enclosure(512);
        assert_near(&fine, &reference, 70, "ln2");
        assert!(fine.is_subset_of(&ln2_enclosure(64)));
    }

    #[test]
    fn exp_log_random_inverse_pairs() {
        // log(exp(x)) must enclose x for assorted rational x.
        for (n, d) in [(1i64, 1i64), (-1, 1), (3, 7), (-13, 5), (11, 2), (0, 1)] {
            let x = Interval::from_rational(&rat(n, d), 128);
            let ex = exp(&x, 128);
            let back = log(&ex, 128).unwrap();
            assert!(back.contains_rational(&rat(n, d)), "roundtrip {n}/{d}");
        }
    }

    #[test]
    fn exp_known_values() {
        // e^1 matches the e series
        let e1 = exp(&Interval::from_u64(1), 128);
        let reference = dec("2.71828182845904523536028747135266249775724709369996");
        assert!(e1.contains_rational(&reference));
        // e^-1/8 used by a lower bound
        let x = Interval::from_rational(&rat(-1, 8), 96);
        let v = exp(&x, 96);
        assert!(v.contains_rational(&dec(
            "0.882496902584595402864892143229050736222004824990650741770309"
        )));
        assert!(v.width() < Dyadic::pow2(-80));
    }

    #[test]
    fn log_known_values() {
        let l2 = log(&Interval::from_u64(2), 128).unwrap();
        assert!(l2.contains_rational(&dec("0.69314718055994530941723212145817656807550013436026")));
        // log(1) is exactly enclosed around zero
        let l1 = log(&Interval::from_u64(1), 64).unwrap();
        assert!(l1.contains_rational(&rat(0, 1)));
        assert!(l1.width() < Dyadic::pow2(-60));
        // log of a power of two uses the pure-ln2 path
        let l1024 = log(&Interval::from_u64(1024), 128).unwrap();
        let ten_ln2 = dec("6.93147180559945309417232121458176568075500134360255");
        assert!(l1024.contains_rational(&ten_ln2));
        assert!(log(&Interval::from_i64(-1), 64).is_err());
        assert!(log(&Interval::new(Dyadic::zero(), Dyadic::one(), 0), 64).is_err());
    }

    #[test]
    fn sqrt_and_pow() {
        let s2 = sqrt(&Interval::from_u64(2), 128).unwrap();
        assert!(s2.contains_rational(&dec("1.41421356237309504880168872420969807856967187537694")));
        assert!(sqrt(&Interval::from_i64(-4), 64).is_err());

        // 5^(9/2) = 625 sqrt 5 = 1397.5424859373685602557...
        let five = Interval::from_u64(5);
        let y = Interval::from_rational(&rat(9, 2), 96);
        let v = pow(&five, &y, 96).unwrap();
        assert!(v.contains_rational(&dec("1397.54248593736856025573354295704764715")));
        // squaring the result encloses 5^9 = 1953125
        let sq = v.mul(&v, 96);
        assert!(sq.contains_rational(&rat(1953125, 1)));
        assert!(pow(&Interval::from_i64(0), &y, 64).is_err());
    }

    #[test]
    fn refinement_nests_for_transcendentals() {
        let x = Interval::from_rational(&rat(-11, 1200), 256);
        let coarse = exp(&x, 64);
        let fine = exp(&x, 128);
        assert!(fine.is_subset_of(&coarse));
        assert!(fine.width() < coarse.width());

        let y = Interval::from_u64(1500);
        let lc = log(&y, 64).unwrap();
        let lf = log(&y, 256).unwrap();
        assert!(lf.is_subset_of(&lc));
    }
}
