//! Adaptive certified comparison.
//!
//! A comparison only ever returns `Holds` or `Fails` when the evidence is
//! decisive: exact scalars are compared exactly, and enclosures must separate
//! (the interval of `rhs - lhs` must exclude the undecidable region) before a
//! verdict is emitted. Anything else refines the working precision — 64 bits,
//! doubling — until the configured cap, then reports `Undecided`.

use serde::{Deserialize, Serialize};

use super::interval::Interval;
use crate::error::Error;
use crate::exactnum::Rational;

/// Comparison relation between left and right values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    /// Strict `lhs < rhs`. Exact ties fail.
    Lt,
    /// Non-strict `lhs <= rhs`. Exact ties hold.
    Le,
}

/// Outcome state of a certified check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum State {
    Holds,
    Fails,
    Undecided,
}

impl State {
    pub fn as_str(&self) -> &'static str {
        match self {
            State::Holds => "holds",
            State::Fails => "fails",
            State::Undecided => "undecided",
        }
    }
}

/// A value that is either exactly known or enclosed.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rational),
    Enclosure(Interval),
}

impl Scalar {
    fn to_interval(&self, p: u32) -> Interval {
        match self {
            Scalar::Exact(q) => Interval::from_rational(q, p),
            Scalar::Enclosure(i) => i.clone(),
        }
    }
}

/// The outcome of one certified check.
///
/// `margin` encloses `rhs - lhs` (positive when the compared inequality is
/// comfortably true). `precision_used` is the precision in force at the
/// decision: 0 for purely exact decisions, the configured cap for
/// `Undecided`. `witness` is filled by callers that know the parameter
/// tuple, on `Fails` only.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub state: State,
    pub witness: Option<Vec<u64>>,
    pub precision_used: u32,
    pub margin: Option<Interval>,
}

impl Verdict {
    pub fn new(state: State, precision_used: u32, margin: Option<Interval>) -> Self {
        Verdict { state, witness: None, precision_used, margin }
    }

    pub fn with_witness(mut self, params: &[u64]) -> Self {
        if self.state == State::Fails {
            self.witness = Some(params.to_vec());
        }
        self
    }
}

/// Decide `lhs rel rhs` where both sides are re-evaluatable at any
/// precision.
///
/// Exact-vs-exact pairs decide immediately by exact comparison. Pairs
/// involving an enclosure decide only when the difference interval
/// `rhs - lhs` separates from the failure region:
///
/// * `Lt`: holds when `diff.lo > 0`, fails when `diff.hi <= 0`;
/// * `Le`: holds when `diff.lo >= 0`, fails when `diff.hi < 0`.
///
/// Otherwise the precision doubles (starting at 64 bits) up to `cap`, after
/// which the verdict is `Undecided` — never a guess.
pub fn adaptive_compare(
    lhs: &dyn Fn(u32) -> Result<Scalar, Error>,
    rhs: &dyn Fn(u32) -> Result<Scalar, Error>,
    rel: Rel,
    cap: u32,
) -> Result<Verdict, Error> {
    let cap = cap.max(8);
    let mut p = 64u32.min(cap);
    loop {
        let l = lhs(p)?;
        let r = rhs(p)?;
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (&l, &r) {
            let holds = match rel {
                Rel::Lt => a < b,
                Rel::Le => a <= b,
            };
            let margin = Interval::from_rational(&(b - a), 64);
            let state = if holds { State::Holds } else { State::Fails };
            return Ok(Verdict::new(state, 0, Some(margin)));
        }
        let li = l.to_interval(p);
        let ri = r.to_interval(p);
        let diff = ri.sub(&li, p);
        let decided = match rel {
            Rel::Lt => {
                if diff.lo().signum() > 0 {
                    Some(State::Holds)
                } else if diff.hi().signum() <= 0 {
                    Some(State::Fails)
                } else {
                    None
                }
            }
            Rel::Le => {
                if diff.lo().signum() >= 0 {
                    Some(State::Holds)
                } else if diff.hi().signum() < 0 {
                    Some(State::Fails)
                } else {
                    None
                }
            }
        };
        if let Some(state) = decided {
            return Ok(Verdict::new(state, p, Some(diff)));
        }
        if p >= cap {
            return Ok(Verdict::new(State::Undecided, cap, Some(diff)));
        }
        p = p.saturating_mul(2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::rigor::{e_enclosure, exp, pi_enclosure, sqrt};

    fn exact(n: i64, d: i64) -> impl Fn(u32) -> Result<Scalar, Error> {
        move |_| Ok(Scalar::Exact(rat(n, d)))
    }

    #[test]
    fn exact_ties_follow_strictness() {
        let v = adaptive_compare(&exact(1, 2), &exact(2, 4), Rel::Lt, 1024).unwrap();
        assert_eq!(v.state, State::Fails);
        assert_eq!(v.precision_used, 0);
        let v = adaptive_compare(&exact(1, 2), &exact(2, 4), Rel::Le, 1024).unwrap();
        assert_eq!(v.state, State::Holds);
    }

    #[test]
    fn exact_strict_decides() {
        let v = adaptive_compare(&exact(1, 3), &exact(2, 3), Rel::Lt, 1024).unwrap();
        assert_eq!(v.state, State::Holds);
        assert!(v.margin.unwrap().contains_rational(&rat(1, 3)));
        let v = adaptive_compare(&exact(5, 1), &exact(2, 3), Rel::Lt, 1024).unwrap();
        assert_eq!(v.state, State::Fails);
    }

    #[test]
    fn enclosure_vs_exact() {
        // pi < 22/7 (true, margin ~ 1/790)
        let pi = |p: u32| Ok(Scalar::Enclosure(pi_enclosure(p)));
        let v = adaptive_compare(&pi, &exact(22, 7), Rel::Lt, 1024).unwrap();
        assert_eq!(v.state, State::Holds);
        assert_eq!(v.precision_used, 64);
        // pi < 3 fails
        let v = adaptive_compare(&pi, &exact(3, 1), Rel::Lt, 1024).unwrap();
        assert_eq!(v.state, State::Fails);
        assert!(v.margin.unwrap().strictly_negative());
    }

    #[test]
    fn thin_margins_escalate_precision() {
        // A 21-digit truncation of e sits ~4e-22 below it; separating the
        // two needs more than 64 bits, so the loop must escalate.
        let num: num_bigint::BigInt = "271828182845904523536".parse().unwrap();
        let den: num_bigint::BigInt = "100000000000000000000".parse().unwrap();
        let close = crate::exactnum::Rational::new(num, den);
        let lhs = move |_p: u32| Ok(Scalar::Exact(close.clone()));
        let rhs = |p: u32| Ok(Scalar::Enclosure(e_enclosure(p)));
        let v = adaptive_compare(&lhs, &rhs, Rel::Lt, 4096).unwrap();
        assert_eq!(v.state, State::Holds);
        assert!(v.precision_used > 64);
        assert!(v.margin.unwrap().strictly_positive());
    }

    #[test]
    fn undecided_at_cap_when_values_coincide() {
        // sqrt(2)^2 compared to 2 strictly: enclosures never separate.
        let lhs = |p: u32| {
            let s = sqrt(&Interval::from_u64(2), p)?;
            Ok(Scalar::Enclosure(s.mul(&s, p)))
        };
        let v = adaptive_compare(&lhs, &exact(2, 1), Rel::Lt, 256).unwrap();
        assert_eq!(v.state, State::Undecided);
        assert_eq!(v.precision_used, 256);
    }

    #[test]
    fn monotone_decisions_across_caps() {
        // Raising the cap never flips Holds to Fails: e^1 < 2.72.
        let lhs = |p: u32| Ok(Scalar::Enclosure(exp(&Interval::from_u64(1), p)));
        let rhs = exact(272, 100);
        let a = adaptive_compare(&lhs, &rhs, Rel::Lt, 64).unwrap();
        let b = adaptive_compare(&lhs, &rhs, Rel::Lt, 4096).unwrap();
        assert_eq!(a.state, State::Holds);
        assert_eq!(b.state, State::Holds);
        // and the e enclosure itself agrees with the library constant
        let e1 = exp(&Interval::from_u64(1), 128);
        assert!(e1.is_subset_of(&e_enclosure(64)));
    }
}
