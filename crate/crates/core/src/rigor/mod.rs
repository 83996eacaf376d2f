//! Directed-rounding interval arithmetic on dyadic floats.
//!
//! The scalar type is [`Dyadic`], an exact `mantissa * 2^exponent` binary
//! number. Every rounding operation takes an explicit precision (mantissa
//! bits) and a direction, rounding toward minus infinity for lower endpoints
//! and toward plus infinity for upper endpoints, so an [`Interval`] built
//! from rounded endpoints always encloses the exact real result of the
//! expression it evaluates. Transcendental values are enclosed by argument
//! reduction plus truncated series whose remainder terms are folded into the
//! interval explicitly; no operation in this module consults machine floats.
//!
//! Precision is always a per-call parameter. There is no global rounding
//! state; memoisation of `pi`, `e` and `ln 2` enclosures is keyed by the
//! requested precision and returns bit-identical intervals.

mod compare;
mod dyadic;
mod interval;
mod transcend;

pub use compare::{adaptive_compare, Rel, Scalar, State, Verdict};
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use transcend::{e_enclosure, exp, ln2_enclosure, log, pi_enclosure, pow, sqrt};
