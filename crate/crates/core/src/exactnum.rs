//! Exact natural and rational arithmetic.
//!
//! `Natural` is an arbitrary-precision unsigned integer and `Rational` an
//! arbitrary-precision fraction kept in lowest terms with positive
//! denominator (both invariants are maintained by the underlying types and
//! asserted in the test suite). Everything here is exact; nothing rounds.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::cmp::Ordering;

use crate::error::Error;

/// Arbitrary-precision natural number (canonical, no leading zero limbs).
pub type Natural = BigUint;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Binomial coefficient `C(n, k)` by the multiplicative formula.
///
/// Every intermediate division is exact: after the `i`-th step the
/// accumulator equals `C(n - k + i, i)`, an integer. Returns 0 for `k > n`
/// and uses the symmetry `C(n, k) = C(n, n-k)` to shorten the loop.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut c = Natural::one();
    for i in 1..=k {
        c = c * Natural::from(n - k + i) / Natural::from(i);
    }
    c
}

/// `n!` as an exact natural.
pub fn factorial(n: u64) -> Natural {
    let mut f = Natural::one();
    for i in 2..=n {
        f *= Natural::from(i);
    }
    f
}

/// `base^exp` by binary exponentiation. Rejects the indeterminate `0^0`;
/// callers that want the combinatorial convention use [`ipow0`].
pub fn ipow(base: &Natural, exp: u64) -> Result<Natural, Error> {
    if base.is_zero() && exp == 0 {
        return Err(Error::domain("0^0 is indeterminate (use ipow0 for the 0^0 = 1 convention)"));
    }
    Ok(ipow0(base, exp))
}

/// `base^exp` with the convention `0^0 = 1` (the one under which
/// `k^k (n-k)^(n-k)` is meaningful at `k = 0` and `k = n`).
pub fn ipow0(base: &Natural, exp: u64) -> Natural {
    if exp == 0 {
        return Natural::one();
    }
    if base.is_zero() {
        return Natural::zero();
    }
    let mut result = Natural::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// Convenience: `m^m` with `0^0 = 1`.
pub fn self_pow(m: u64) -> Natural {
    ipow0(&Natural::from(m), m)
}

/// Exact three-way comparison of rationals (cross multiplication; no
/// rounding anywhere).
pub fn compare_rational(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from a natural numerator and denominator.
pub fn rat_nat(num: Natural, den: Natural) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A natural as a rational.
pub fn nat_to_rational(n: &Natural) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}
