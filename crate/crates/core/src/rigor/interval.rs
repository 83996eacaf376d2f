//! Closed intervals with outward-rounded endpoints.

use num_bigint::{BigInt, BigUint};

use super::dyadic::{Dyadic, Round};
use crate::error::Error;
use crate::exactnum::Rational;

/// A closed interval `[lo, hi]` guaranteed to contain the exact real value
/// of the expression it was computed from.
///
/// `precision_bits` records the precision the interval was last rounded at
/// (0 for exactly-representable constructions); the enclosure guarantee
/// comes from the endpoints alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision_bits: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, precision_bits }
    }

    /// Degenerate interval holding one exact dyadic.
    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d, precision_bits: 0 }
    }

    pub fn from_u64(v: u64) -> Self {
        Self::point(Dyadic::from_u64(v))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::point(Dyadic::from_i64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::point(Dyadic::from_bigint(v.clone()))
    }

    pub fn from_natural(v: &BigUint) -> Self {
        Self::point(Dyadic::from_biguint(v.clone()))
    }

    /// Tightest `p`-bit interval around a rational.
    pub fn from_rational(q: &Rational, p: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational_round(q, p, Round::Down),
            hi: Dyadic::from_rational_round(q, p, Round::Up),
            precision_bits: p,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn add(&self, rhs: &Self, p: u32) -> Self {
        Interval {
            lo: self.lo.add_round(&rhs.lo, p, Round::Down),
            hi: self.hi.add_round(&rhs.hi, p, Round::Up),
            precision_bits: p,
        }
    }

    pub fn sub(&self, rhs: &Self, p: u32) -> Self {
        Interval {
            lo: self.lo.sub_round(&rhs.hi, p, Round::Down),
            hi: self.hi.sub_round(&rhs.lo, p, Round::Up),
            precision_bits: p,
        }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), precision_bits: self.precision_bits }
    }

    /// Product: min/max over the four exact endpoint products, rounded
    /// outward. Correct for every sign configuration.
    pub fn mul(&self, rhs: &Self, p: u32) -> Self {
        let c = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo: lo.round(p, Round::Down), hi: hi.round(p, Round::Up), precision_bits: p }
    }

    /// Multiply by an exact dyadic scalar.
    pub fn mul_dyadic(&self, d: &Dyadic, p: u32) -> Self {
        if d.signum() >= 0 {
            Interval {
                lo: self.lo.mul_round(d, p, Round::Down),
                hi: self.hi.mul_round(d, p, Round::Up),
                precision_bits: p,
            }
        } else {
            Interval {
                lo: self.hi.mul_round(d, p, Round::Down),
                hi: self.lo.mul_round(d, p, Round::Up),
                precision_bits: p,
            }
        }
    }

    /// Quotient; errors if the divisor interval contains zero.
    pub fn div(&self, rhs: &Self, p: u32) -> Result<Self, Error> {
        if rhs.lo.signum() <= 0 && rhs.hi.signum() >= 0 {
            return Err(Error::domain("interval division by an interval containing zero"));
        }
        let pairs = [(&self.lo, &rhs.lo), (&self.lo, &rhs.hi), (&self.hi, &rhs.lo), (&self.hi, &rhs.hi)];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in pairs {
            let d = a.div_round(b, p, Round::Down);
            let u = a.div_round(b, p, Round::Up);
            lo = Some(match lo {
                Some(cur) if cur <= d => cur,
                _ => d,
            });
            hi = Some(match hi {
                Some(cur) if cur >= u => cur,
                _ => u,
            });
        }
        Ok(Interval { lo: lo.unwrap(), hi: hi.unwrap(), precision_bits: p })
    }

    /// Divide by an exact positive dyadic.
    pub fn div_dyadic_pos(&self, d: &Dyadic, p: u32) -> Self {
        debug_assert!(d.signum() > 0);
        Interval {
            lo: self.lo.div_round(d, p, Round::Down),
            hi: self.hi.div_round(d, p, Round::Up),
            precision_bits: p,
        }
    }

    pub fn div_u64(&self, d: u64, p: u32) -> Self {
        self.div_dyadic_pos(&Dyadic::from_u64(d), p)
    }

    /// Integer power by repeated interval multiplication (binary ladder).
    pub fn powi(&self, e: u64, p: u32) -> Self {
        if e == 0 {
            return Interval::point(Dyadic::one());
        }
        let mut result: Option<Interval> = None;
        let mut sq = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.mul(&sq, p),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq, p);
        }
        result.unwrap()
    }

    /// Multiply by `2^k` exactly.
    pub fn scale2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.shl2(k),
            hi: self.hi.shl2(k),
            precision_bits: self.precision_bits,
        }
    }

    /// Re-round both endpoints outward at precision `p`.
    pub fn round_to(&self, p: u32) -> Self {
        Interval {
            lo: self.lo.round(p, Round::Down),
            hi: self.hi.round(p, Round::Up),
            precision_bits: p,
        }
    }

    /// Upper bound on the width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub_round(&self.lo, 64, Round::Up)
    }

    /// `floor(log2 max(|lo|,|hi|))`, or `None` for [0,0]. Used for series
    /// stopping criteria.
    pub fn mag_order(&self) -> Option<i64> {
        let a = self.lo.order();
        let b = self.hi.order();
        match (a, b) {
            (None, None) => None,
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (Some(x), Some(y)) => Some(x.max(y)),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Enclosure of `min(x, y)` for `x` in `self`, `y` in `other`.
    pub fn min_with(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi, precision_bits: self.precision_bits.max(other.precision_bits) }
    }

    /// Directed decimal rendering of both endpoints.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (self.lo.to_decimal_round(digits, Round::Down), self.hi.to_decimal_round(digits, Round::Up))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (lo, hi) = self.to_decimal_pair(f.precision().unwrap_or(24));
        write!(f, "[{lo}, {hi}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn third(p: u32) -> Interval {
        Interval::from_rational(&rat(1, 3), p)
    }

    #[test]
    fn from_rational_encloses() {
        let i = third(64);
        assert!(i.contains_rational(&rat(1, 3)));
        assert!(i.width() < Dyadic::pow2(-60));
    }

    #[test]
    fn arithmetic_encloses_exact_rational_results() {
        let a = third(64);
        let b = Interval::from_rational(&rat(22, 7), 64);
        let sum = a.add(&b, 64);
        assert!(sum.contains_rational(&(rat(1, 3) + rat(22, 7))));
        let prod = a.mul(&b, 64);
        assert!(prod.contains_rational(&(rat(1, 3) * rat(22, 7))));
        let quot = a.div(&b, 64).unwrap();
        assert!(quot.contains_rational(&(rat(1, 3) / rat(22, 7))));
        let diff = a.sub(&b, 64);
        assert!(diff.contains_rational(&(rat(1, 3) - rat(22, 7))));
        assert!(diff.strictly_negative());
    }

    #[test]
    fn mul_sign_cases() {
        let neg = Interval::from_rational(&rat(-3, 2), 64);
        let span = Interval::new(Dyadic::from_i64(-2), Dyadic::from_i64(5), 0);
        let p = neg.mul(&span, 64);
        // [-3/2] * [-2,5] = [-15/2, 3]
        assert!(p.contains_rational(&rat(-15, 2)));
        assert!(p.contains_rational(&rat(3, 1)));
        assert!(p.contains_zero());
    }

    #[test]
    fn division_by_zero_interval_rejected() {
        let span = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), 0);
        assert!(Interval::from_u64(1).div(&span, 64).is_err());
    }

    #[test]
    fn powi_matches_exact_powers() {
        let i = third(96);
        let p = i.powi(5, 96);
        assert!(p.contains_rational(&rat(1, 243)));
        let two = Interval::from_u64(2);
        let p10 = two.powi(10, 64);
        assert!(p10.contains_rational(&rat(1024, 1)));
        assert_eq!(p10.width(), Dyadic::zero());
        assert_eq!(Interval::from_u64(0).powi(0, 64).lo(), &Dyadic::one());
    }

    #[test]
    fn refinement_narrows_and_nests() {
        let coarse = third(64);
        let fine = third(128);
        assert!(fine.is_subset_of(&coarse));
        assert!(fine.width() < coarse.width());
    }

    #[test]
    fn min_with_encloses_minimum() {
        let a = Interval::from_rational(&rat(3, 1), 64);
        let b = Interval::from_rational(&rat(7, 2), 64);
        let m = a.min_with(&b);
        assert!(m.contains_rational(&rat(3, 1)));
        assert!(!m.contains_rational(&rat(7, 2)));
    }
}
