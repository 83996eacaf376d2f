//! Certified checks for factorial and binomial-coefficient inequalities.
//!
//! Every verdict produced by this crate is backed either by exact
//! big-integer/rational arithmetic or by directed-rounding interval
//! arithmetic, never by naive floating point. The crate is organised as:
//!
//! * [`exactnum`] — exact naturals, rationals, binomials, factorials.
//! * [`rigor`] — arbitrary-precision dyadic intervals with outward rounding,
//!   enclosures of `e`, `pi`, `exp`, `log`, `sqrt`, real powers, and the
//!   adaptive comparison loop that turns enclosures into [`rigor::Verdict`]s.
//! * [`search`] — the threshold function `f(n)` (least `k` with
//!   `(n+1)*C(n,k) > 2^n`), window certification, the resumable pair scan and
//!   the scan statistic.
//! * [`bounds`] — one evaluator and one checker per named bound, each either
//!   rationalised to an exact integer comparison or decided through interval
//!   enclosures.
//! * [`verify`] — the sweep engine (parameter enumeration, hypothesis
//!   clipping, parallel blocks, deterministic merge) and the regression suite.

pub mod bounds;
pub mod error;
pub mod exactnum;
pub mod rigor;
pub mod search;
pub mod verify;

pub use error::Error;
pub use exactnum::{Natural, Rational};
pub use rigor::{Interval, Rel, State, Verdict};

/// Default adaptive-precision cap in bits.
pub const DEFAULT_PRECISION_CAP: u32 = 16384;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
