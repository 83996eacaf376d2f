//! Exact dyadic numbers `mantissa * 2^exponent` with directed rounding.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::exactnum::Rational;

/// Rounding direction for the signed value (not the magnitude).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward minus infinity (lower endpoints).
    Down,
    /// Toward plus infinity (upper endpoints).
    Up,
}

/// An exact binary number `mant * 2^exp`.
///
/// Canonical form: a zero value has `exp == 0`; a nonzero mantissa is odd.
/// All constructors normalise, so derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.magnitude().trailing_zeros().unwrap_or(0);
        if tz > 0 {
            // Only zero bits are shifted off, so this is exact for either
            // shift semantics.
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic { mant: v, exp: 0 }.normalized()
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Mantissa bit length (0 for zero).
    pub fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    /// `floor(log2 |v|)` for nonzero values.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.bits() as i64 - 1)
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn shl2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Round to at most `p` mantissa bits in direction `dir`.
    pub fn round(&self, p: u32, dir: Round) -> Self {
        debug_assert!(p >= 2);
        let bits = self.bits();
        if bits <= p as u64 {
            return self.clone().normalized();
        }
        let drop = bits - p as u64;
        let mag = self.mant.magnitude();
        let q: BigUint = mag >> drop;
        let dropped_nonzero = mag.trailing_zeros().unwrap_or(0) < drop;
        let neg = self.mant.sign() == Sign::Minus;
        // Rounding the signed value toward -inf truncates positive
        // magnitudes and bumps negative ones; toward +inf is the mirror.
        let bump = dropped_nonzero
            && match dir {
                Round::Down => neg,
                Round::Up => !neg,
            };
        let q = if bump { q + 1u32 } else { q };
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        Dyadic { mant: BigInt::from_biguint(sign, q), exp: self.exp + drop as i64 }.normalized()
    }

    /// Exact sum. Callers are responsible for keeping the exponent gap sane;
    /// [`Dyadic::add_round`] does that and should be preferred.
    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let d = (a.exp - b.exp) as u64;
        let mant = (&a.mant << d) + &b.mant;
        Dyadic { mant, exp: b.exp }.normalized()
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    /// Exact product.
    pub fn mul_exact(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalized()
    }

    /// `self + other` rounded to `p` bits in direction `dir`.
    ///
    /// When the operands' scales are so far apart that the smaller one lies
    /// strictly below an ulp of the rounded larger one, the sum is not formed
    /// literally (that could cost millions of bits of alignment); instead the
    /// larger operand is rounded and nudged one ulp in the safe direction.
    pub fn add_round(&self, other: &Self, p: u32, dir: Round) -> Self {
        if self.is_zero() {
            return other.round(p, dir);
        }
        if other.is_zero() {
            return self.round(p, dir);
        }
        let oa = self.order().unwrap();
        let ob = other.order().unwrap();
        let (big, small, obig, osmall) =
            if oa >= ob { (self, other, oa, ob) } else { (other, self, ob, oa) };
        // Far case: |small| < 2^(osmall+1) <= 2^(obig - p - 3) <= ulp(big)/4.
        if osmall + 2 < obig - p as i64 - 2 {
            let c = big.round(p, dir);
            let ulp_exp = c.order().unwrap() - p as i64;
            return match (dir, small.signum() > 0) {
                // Rounded-down big is already <= big < big + small.
                (Round::Down, true) => c,
                // Rounded-up big is already >= big > big + small.
                (Round::Up, false) => c,
                (Round::Down, false) => {
                    c.sub_exact(&Dyadic::pow2(ulp_exp)).round(p, Round::Down)
                }
                (Round::Up, true) => c.add_exact(&Dyadic::pow2(ulp_exp)).round(p, Round::Up),
            };
        }
        self.add_exact(other).round(p, dir)
    }

    pub fn sub_round(&self, other: &Self, p: u32, dir: Round) -> Self {
        self.add_round(&other.neg(), p, dir)
    }

    pub fn mul_round(&self, other: &Self, p: u32, dir: Round) -> Self {
        self.mul_exact(other).round(p, dir)
    }

    /// `self / other` rounded to `p` bits in direction `dir`.
    ///
    /// Panics if `other` is zero; interval division screens that out first.
    pub fn div_round(&self, other: &Self, p: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let neg = (self.mant.sign() == Sign::Minus) != (other.mant.sign() == Sign::Minus);
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let shift = (p as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0) as u64;
        let num: BigUint = a << shift;
        let (q, r) = num.div_rem(b);
        let rem_nonzero = !r.is_zero();
        // q <= |self/other| scaled < q+1; bump to stay on the correct side
        // of the signed value.
        let bump = rem_nonzero
            && match dir {
                Round::Down => neg,
                Round::Up => !neg,
            };
        let q = if bump { q + 1u32 } else { q };
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        let exp = self.exp - other.exp - shift as i64;
        Dyadic { mant: BigInt::from_biguint(sign, q), exp }.normalized().round(p, dir)
    }

    /// Directed square root of a nonnegative dyadic.
    pub fn sqrt_round(&self, p: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let m = self.mant.magnitude();
        let bits = m.bits();
        let mut s = (2 * p as u64 + 4).saturating_sub(bits);
        if (self.exp - s as i64).rem_euclid(2) != 0 {
            s += 1;
        }
        let scaled: BigUint = m << s;
        let g = (self.exp - s as i64) / 2;
        let root = scaled.sqrt();
        match dir {
            Round::Down => {
                Dyadic { mant: BigInt::from(root), exp: g }.normalized().round(p, Round::Down)
            }
            Round::Up => {
                let exact = &root * &root == scaled;
                let r = if exact { root } else { root + 1u32 };
                Dyadic { mant: BigInt::from(r), exp: g }.normalized().round(p, Round::Up)
            }
        }
    }

    /// Exact conversion to a rational (every dyadic is rational).
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed conversion from a rational.
    pub fn from_rational_round(q: &Rational, p: u32, dir: Round) -> Self {
        let num = Dyadic::from_bigint(q.numer().clone());
        let den = Dyadic::from_bigint(q.denom().clone());
        num.div_round(&den, p, dir)
    }

    /// Exact comparison of values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes, flipping for negatives.
        let mag = match (self.order().unwrap()).cmp(&other.order().unwrap()) {
            Ordering::Equal => {
                let d = self.exp - other.exp;
                if d >= 0 {
                    (self.mant.magnitude() << d as u64).cmp(other.mant.magnitude())
                } else {
                    self.mant.magnitude().cmp(&(other.mant.magnitude() << (-d) as u64))
                }
            }
            ord => ord,
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    /// Decimal rendering with `digits` significant digits, final digit
    /// rounded in direction `dir` (so printed enclosures still enclose).
    pub fn to_decimal_round(&self, digits: usize, dir: Round) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() < 0;
        let o2 = self.order().unwrap();
        let mut k = (o2 as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let (n, e10) = loop {
            let e10 = k - digits as i64 + 1;
            let mut num = self.mant.magnitude().clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            if e10 <= 0 {
                num *= BigUint::from(10u32).pow((-e10) as u32);
            } else {
                den *= BigUint::from(10u32).pow(e10 as u32);
            }
            let (q, r) = num.div_rem(&den);
            let bump = !r.is_zero()
                && match dir {
                    Round::Down => neg,
                    Round::Up => !neg,
                };
            let n = if bump { q + 1u32 } else { q };
            let nd = n.to_string().len() as i64;
            if n.is_zero() {
                // Rounded to zero at this scale (tiny value, truncating
                // direction); "0" is a valid directed rendering.
                return "0".to_string();
            }
            if nd == digits as i64 {
                break (n, e10);
            }
            k += nd - digits as i64;
        };
        let s = n.to_string();
        let point_exp = e10 + digits as i64 - 1; // exponent of leading digit
        let body = if (-4..16).contains(&point_exp) {
            if point_exp >= digits as i64 - 1 {
                // integer with trailing zeros
                let zeros = (point_exp - (digits as i64 - 1)) as usize;
                format!("{}{}", s, "0".repeat(zeros))
            } else if point_exp >= 0 {
                let (int, frac) = s.split_at(point_exp as usize + 1);
                format!("{int}.{frac}")
            } else {
                format!("0.{}{}", "0".repeat((-point_exp - 1) as usize), s)
            }
        } else {
            let (first, rest) = s.split_at(1);
            if rest.is_empty() {
                format!("{first}e{point_exp}")
            } else {
                format!("{first}.{rest}e{point_exp}")
            }
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn d(v: i64) -> Dyadic {
        Dyadic::from_i64(v)
    }

    #[test]
    fn normalisation_and_equality() {
        let a = Dyadic { mant: BigInt::from(12), exp: 0 }.normalized();
        let b = Dyadic { mant: BigInt::from(3), exp: 2 };
        assert_eq!(a, b);
        assert_eq!(Dyadic::zero().order(), None);
        assert_eq!(d(6).order(), Some(2));
        assert_eq!(Dyadic::pow2(-3).order(), Some(-3));
    }

    #[test]
    fn rounding_directions() {
        // 0b10011 = 19; at 3 bits: down -> 0b100 * 4 = 16, up -> 0b101 * 4 = 20
        assert_eq!(d(19).round(3, Round::Down), d(16));
        assert_eq!(d(19).round(3, Round::Up), d(20));
        // negative flips: -19 down -> -20, up -> -16
        assert_eq!(d(-19).round(3, Round::Down), d(-20));
        assert_eq!(d(-19).round(3, Round::Up), d(-16));
        // exact values do not move
        assert_eq!(d(16).round(3, Round::Down), d(16));
        assert_eq!(d(16).round(3, Round::Up), d(16));
        // carry into an extra bit: 0b111 rounded up at 2 bits -> 0b1000
        assert_eq!(d(7).round(2, Round::Up), d(8));
    }

    #[test]
    fn directed_add_far_path() {
        let big = Dyadic::one();
        let tiny = Dyadic::pow2(-100_000);
        let down = big.add_round(&tiny, 64, Round::Down);
        let up = big.add_round(&tiny, 64, Round::Up);
        // true value is 1 + 2^-100000
        assert!(down <= Dyadic::one());
        assert!(up > Dyadic::one());
        // the nudge is at most one ulp at 64 bits
        assert!(up <= Dyadic::one().add_exact(&Dyadic::pow2(-63)));

        let down2 = big.add_round(&tiny.neg(), 64, Round::Down);
        let up2 = big.add_round(&tiny.neg(), 64, Round::Up);
        assert!(down2 < Dyadic::one());
        assert!(up2 >= Dyadic::one());
    }

    #[test]
    fn division_brackets_one_third() {
        let lo = d(1).div_round(&d(3), 64, Round::Down);
        let hi = d(1).div_round(&d(3), 64, Round::Up);
        let third = rat(1, 3);
        assert!(lo.to_rational() < third);
        assert!(hi.to_rational() > third);
        // width below 2^-60 at 64 bits
        let width = hi.sub_exact(&lo);
        assert!(width < Dyadic::pow2(-60));
    }

    #[test]
    fn sqrt_brackets() {
        let two = d(2);
        let lo = two.sqrt_round(64, Round::Down);
        let hi = two.sqrt_round(64, Round::Up);
        assert!(lo.mul_exact(&lo) < two);
        assert!(hi.mul_exact(&hi) > two);
        assert!(hi.sub_exact(&lo) < Dyadic::pow2(-60));
        // perfect square stays exact
        assert_eq!(d(144).sqrt_round(64, Round::Down), d(12));
        assert_eq!(d(144).sqrt_round(64, Round::Up), d(12));
    }

    #[test]
    fn value_ordering() {
        assert!(d(-5) < d(3));
        assert!(Dyadic::pow2(-1) < Dyadic::one());
        assert!(d(1023).shl2(-10) < Dyadic::one());
        assert_eq!(d(4).cmp_value(&Dyadic::pow2(2)), Ordering::Equal);
        assert!(d(-3) < d(-2));
    }

    #[test]
    fn decimal_rendering_directed() {
        let third_lo = d(1).div_round(&d(3), 80, Round::Down);
        let third_hi = d(1).div_round(&d(3), 80, Round::Up);
        let s_lo = third_lo.to_decimal_round(10, Round::Down);
        let s_hi = third_hi.to_decimal_round(10, Round::Up);
        assert_eq!(s_lo, "0.3333333333");
        assert_eq!(s_hi, "0.3333333334");
        assert_eq!(d(3628800).to_decimal_round(7, Round::Down), "3628800");
        assert_eq!(d(-19).to_decimal_round(2, Round::Down), "-19");
        let tiny = Dyadic::pow2(-200);
        assert!(tiny.to_decimal_round(5, Round::Up).contains('e'));
    }

    #[test]
    fn rational_round_trip() {
        for (n, dgt) in [(1i64, 3i64), (7, 16), (-22, 7), (355, 113)] {
            let q = rat(n, dgt);
            let lo = Dyadic::from_rational_round(&q, 96, Round::Down);
            let hi = Dyadic::from_rational_round(&q, 96, Round::Up);
            assert!(lo.to_rational() <= q && q <= hi.to_rational());
        }
        let exact = rat(5, 4);
        assert_eq!(Dyadic::from_rational_round(&exact, 64, Round::Down).to_rational(), exact);
    }
}
