//! Catalogue of the inequalities this crate certifies.
//!
//! Every inequality is identified by a [`BoundId`]. A bound knows its
//! parameter names, its hypothesis region, whether it can be decided in
//! exact integer/rational arithmetic or only by interval refinement, and
//! its canonical strictness. Point checks go through [`check`]; range
//! sweeps use the block engine in [`check_block`], which shares
//! row-incremental state (binomials, self-power tables, per-row
//! enclosures) across a block of consecutive parameter values.

mod check;
mod eval;

pub use check::{check, check_block, thm21_cleared_parts, BlockOpts, BlockOut, CheckRow};
pub use eval::{
    binom_weighted, describe, eq12_upper, hirschhorn_bounds, lemma21_sides, robbins_bounds,
    stanica_bounds, thm21_exp_rhs, thm21_rational_rhs, thm22_rhs, thm23_rhs, thm24_exp_rhs,
    thm24_pow2_rhs, thm24_rational_rhs,
};

use crate::error::Error;
use crate::exactnum::{self, Natural};
use crate::search::Strictness;
use crate::Result;

/// Evaluation mode for a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Decide by comparing exact integers/rationals after clearing
    /// denominators and squaring away roots. Zero error, no precision cap.
    Exact,
    /// Decide by adaptive interval refinement with directed rounding.
    Interval,
}

/// One point check: a bound, a parameter tuple, and how to decide it.
#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub bound: BoundId,
    pub params: Vec<u64>,
    pub mode: Mode,
    /// `None` means the bound's canonical strictness (which may be mixed
    /// for conjunctions); `Some` forces every comparison to the given one.
    pub strictness: Option<Strictness>,
    pub precision_cap: u32,
}

impl CheckSpec {
    /// A spec with the bound's default mode, canonical strictness, and the
    /// crate-wide precision cap.
    pub fn new(bound: BoundId, params: &[u64]) -> Self {
        CheckSpec {
            bound,
            params: params.to_vec(),
            mode: bound.default_mode(),
            strictness: None,
            precision_cap: crate::DEFAULT_PRECISION_CAP,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_strictness(mut self, s: Strictness) -> Self {
        self.strictness = Some(s);
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.precision_cap = cap;
        self
    }
}

/// Identifies one inequality in the catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// `sqrt(2*pi*n) * n^n * e^(1/(12n+1) - n) < n!`
    RobbinsLower,
    /// `n! < sqrt(2*pi*n) * n^n * e^(1/(12n) - n)`
    RobbinsUpper,
    /// `pi^3 * (8n^3 + 4n^2 + n) * n^(6n) < (n!)^6 * e^(6n)`
    HirschhornLower,
    /// `30 * (n!)^6 * e^(6n) < pi^3 * n^(6n) * (240n^3 + 120n^2 + 30n + 1)`
    HirschhornUpper,
    /// Hirschhorn's remainder term lies strictly between 5 and 11.
    HirschhornRemainder,
    /// `binom(mn, n) < sqrt(m / (2*pi*(m-1)*n)) * (m^m / (m-1)^(m-1))^n`
    Eq12Upper,
    /// `e^(-1/(8n)) * U(m,p,n) < binom(mn, pn)` with
    /// `U = sqrt(m / (2*pi*p*(m-p)*n)) * m^(mn) / (p^(pn) * (m-p)^((m-p)n))`
    StanicaLower,
    /// `binom(mn, pn) < U(m,p,n)` (same `U` as the lower bound).
    StanicaUpper,
    /// `6n^2 * binom(n,k) * k^k * (n-k)^(n-k) < (6n^2 - 5(k-1)) * n * (n-1)^(n-1)`
    Thm21Rational,
    /// `binom(n,k) * k^k * (n-k)^(n-k) < e^(-11(k-1)/(12n^2)) * n * (n-1)^(n-1)`
    Thm21Exp,
    /// `binom(n,k) < sqrt(2/pi) * 2^n / sqrt(n)`
    Thm22,
    /// `25 * binom(n,k)^2 * n < 16 * 4^n`
    Thm22Weak,
    /// `binom(n, floor(n/m)) < m / sqrt(2*pi*(m-1)*n) * m^n / (m-1)^(n(m-1)/m)`
    Thm23,
    /// `(6n^2 * binom(n,k) * k^k * (n-k)^(n-k))^2 < (6n^2 - 5(k - floor(n/5)))^2 * n^(2n-1)`
    Thm24Rational,
    /// `binom(n,k) * k^k * (n-k)^(n-k) < e^(-11(k - floor(n/5))/(12n^2)) * n^n / sqrt(n)`
    Thm24Exp,
    /// `(6n^2 * binom(n,k))^2 * n < (6n^2 - 5(k - floor(n/5)))^2 * 4^n`
    Thm24Pow2,
    /// `(binom(n,k) * k^k * (n-k)^(n-k))^2 < n^(2n-1)`
    Corollary21,
    /// `e^(11/(12n^2)) * g(k+1) < g(k)` where `g(j) = binom(n,j) * j^j * (n-j)^(n-j)`
    Lemma21Ratio,
    /// `(binom(5k+r, k) * k^k * (4k+r)^(4k+r))^2 < (5k+r)^(2(5k+r)-1)`
    Lemma22,
    /// `n^n <= 2^n * k^k * (n-k)^(n-k)` (equality exactly at `k = n/2`)
    Lemma23,
    /// `1 - 1/(2m) + 1/(3m^2) - 1/(4m^3) < m * ln((m+1)/m)`
    Ineq21,
    /// `-1 + 1/(2m) + 1/(6m^2) + 1/(12m^3) < (m-1) * ln((m-1)/m)`
    Ineq23,
    /// `e^(-x) < 1 - x + x^2/2 < 1 - 5(k-1)/(6n^2)` with `x = 11(k-1)/(12n^2)`
    Ineq25,
    /// `(m/(m-1))^r * (n+1-r)/(n+1) <= prod_(j<r) (n-j)/(n-(n-r)/m-j) < (m/(m-1))^r`
    Ineq26,
    /// `N^3 * (240N^3 + 120N^2 + 30N + 1) < 30*pi^3 * (8k^3+4k^2+k) * (8M^3+4M^2+M)`
    /// with `N = 5k+r`, `M = 4k+r`
    Ineq27,
    /// The first column maximum `f(n)` satisfies `f(n) <= floor(n/2) - 1`.
    Ineq28,
}

pub use BoundId::*;

impl BoundId {
    pub const ALL: [BoundId; 26] = [
        RobbinsLower,
        RobbinsUpper,
        HirschhornLower,
        HirschhornUpper,
        HirschhornRemainder,
        Eq12Upper,
        StanicaLower,
        StanicaUpper,
        Thm21Rational,
        Thm21Exp,
        Thm22,
        Thm22Weak,
        Thm23,
        Thm24Rational,
        Thm24Exp,
        Thm24Pow2,
        Corollary21,
        Lemma21Ratio,
        Lemma22,
        Lemma23,
        Ineq21,
        Ineq23,
        Ineq25,
        Ineq26,
        Ineq27,
        Ineq28,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            RobbinsLower => "robbins-lower",
            RobbinsUpper => "robbins-upper",
            HirschhornLower => "hirschhorn-lower",
            HirschhornUpper => "hirschhorn-upper",
            HirschhornRemainder => "hirschhorn-remainder",
            Eq12Upper => "eq12-upper",
            StanicaLower => "stanica-lower",
            StanicaUpper => "stanica-upper",
            Thm21Rational => "thm21-rational",
            Thm21Exp => "thm21-exp",
            Thm22 => "thm22",
            Thm22Weak => "thm22-weak",
            Thm23 => "thm23",
            Thm24Rational => "thm24-rational",
            Thm24Exp => "thm24-exp",
            Thm24Pow2 => "thm24-pow2",
            Corollary21 => "cor21",
            Lemma21Ratio => "lemma21",
            Lemma22 => "lemma22",
            Lemma23 => "lemma23",
            Ineq21 => "ineq21",
            Ineq23 => "ineq23",
            Ineq25 => "ineq25",
            Ineq26 => "ineq26",
            Ineq27 => "ineq27",
            Ineq28 => "ineq28",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<BoundId> {
        BoundId::ALL.iter().copied().find(|b| b.cli_name() == name)
    }

    /// Expand a family shortcut ("robbins", "thm21", ...) or a single bound
    /// name into the member bounds, in catalogue order.
    pub fn family(name: &str) -> Vec<BoundId> {
        match name {
            "robbins" => vec![RobbinsLower, RobbinsUpper],
            "hirschhorn" => vec![HirschhornLower, HirschhornUpper, HirschhornRemainder],
            "stanica" => vec![StanicaLower, StanicaUpper],
            "thm21" => vec![Thm21Rational, Thm21Exp],
            "thm24" => vec![Thm24Rational, Thm24Exp, Thm24Pow2],
            other => BoundId::from_cli_name(other).into_iter().collect(),
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            RobbinsLower | RobbinsUpper | HirschhornLower | HirschhornUpper
            | HirschhornRemainder | Ineq28 => &["n"],
            Ineq21 | Ineq23 => &["m"],
            Eq12Upper | Thm23 => &["m", "n"],
            StanicaLower | StanicaUpper => &["m", "p", "n"],
            Thm21Rational | Thm21Exp | Thm22 | Thm22Weak | Thm24Rational | Thm24Exp
            | Thm24Pow2 | Corollary21 | Lemma21Ratio | Lemma23 | Ineq25 => &["n", "k"],
            Lemma22 | Ineq27 => &["k", "r"],
            Ineq26 => &["m", "r", "n"],
        }
    }

    pub fn arity(self) -> usize {
        self.param_names().len()
    }

    /// Whether the inequality can be decided in exact arithmetic
    /// (rationalizable: no transcendental constants survive clearing).
    pub fn supports_exact(self) -> bool {
        matches!(
            self,
            Thm21Rational
                | Thm22Weak
                | Thm24Rational
                | Thm24Pow2
                | Corollary21
                | Lemma22
                | Lemma23
                | Ineq26
                | Ineq28
        )
    }

    /// Whether the inequality has an interval form. Everything does except
    /// the threshold comparison, which is a pure integer statement.
    pub fn supports_interval(self) -> bool {
        !matches!(self, Ineq28)
    }

    pub fn default_mode(self) -> Mode {
        if self.supports_exact() {
            Mode::Exact
        } else {
            Mode::Interval
        }
    }

    /// Canonical strictness of the headline comparison. Conjunction bounds
    /// with mixed strictness (Ineq26) handle the left leg internally.
    pub fn canonical_strictness(self) -> Strictness {
        match self {
            Lemma23 | Ineq28 => Strictness::NonStrict,
            _ => Strictness::Strict,
        }
    }

    /// Validate a parameter tuple against the hypothesis region.
    pub fn hypothesis(self, params: &[u64]) -> Result<()> {
        if params.len() != self.arity() {
            return Err(Error::domain(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.cli_name(),
                self.arity(),
                self.param_names().join(", "),
                params.len()
            )));
        }
        let fail = |msg: String| -> Result<()> {
            Err(Error::domain(format!("{}: {}", self.cli_name(), msg)))
        };
        match self {
            RobbinsLower | RobbinsUpper => {
                if params[0] < 1 {
                    return fail("requires n >= 1".into());
                }
            }
            HirschhornLower | HirschhornUpper | HirschhornRemainder => {
                if params[0] < 2 {
                    return fail("requires n >= 2".into());
                }
            }
            Eq12Upper => {
                let (m, n) = (params[0], params[1]);
                if m < 2 {
                    return fail("requires m >= 2".into());
                }
                if n < 1 {
                    return fail("requires n >= 1".into());
                }
            }
            StanicaLower | StanicaUpper => {
                let (m, p, n) = (params[0], params[1], params[2]);
                if p < 1 || m <= p {
                    return fail(format!("requires m > p >= 1, got m={m} p={p}"));
                }
                if n < 1 {
                    return fail("requires n >= 1".into());
                }
            }
            Thm21Rational | Thm21Exp | Ineq25 => {
                let (n, k) = (params[0], params[1]);
                if n < 4 {
                    return fail("requires n >= 4".into());
                }
                if k < 2 || k > n / 2 {
                    return fail(format!("requires 2 <= k <= floor(n/2), got n={n} k={k}"));
                }
            }
            Thm22 | Thm22Weak | Lemma23 => {
                let (n, k) = (params[0], params[1]);
                if n < 1 {
                    return fail("requires n >= 1".into());
                }
                if k > n {
                    return fail(format!("requires 0 <= k <= n, got n={n} k={k}"));
                }
            }
            Thm23 => {
                let (m, n) = (params[0], params[1]);
                if m < 3 {
                    return fail("requires m >= 3".into());
                }
                if u128::from(n) < 2 * u128::from(m) - 1 {
                    return fail(format!("requires n >= 2m-1, got m={m} n={n}"));
                }
            }
            Thm24Rational | Thm24Exp | Thm24Pow2 => {
                let (n, k) = (params[0], params[1]);
                if n < 400 {
                    return fail("requires n >= 400".into());
                }
                if k < n / 5 || k > n / 2 {
                    return fail(format!(
                        "requires floor(n/5) <= k <= floor(n/2), got n={n} k={k}"
                    ));
                }
            }
            Corollary21 => {
                let (n, k) = (params[0], params[1]);
                if n < 400 {
                    return fail("requires n >= 400".into());
                }
                if k < n / 5 || u128::from(k) > 4 * u128::from(n) / 5 {
                    return fail(format!(
                        "requires floor(n/5) <= k <= floor(4n/5), got n={n} k={k}"
                    ));
                }
            }
            Lemma21Ratio => {
                let (n, k) = (params[0], params[1]);
                if n < 3 {
                    return fail("requires n >= 3".into());
                }
                if n / 2 == 0 || k > n / 2 - 1 {
                    return fail(format!(
                        "requires 0 <= k <= floor(n/2) - 1, got n={n} k={k}"
                    ));
                }
            }
            Lemma22 => {
                let (k, r) = (params[0], params[1]);
                if k < 80 {
                    return fail("requires k >= 80".into());
                }
                if r > 4 {
                    return fail(format!("requires 0 <= r <= 4, got r={r}"));
                }
            }
            Ineq21 => {
                if params[0] < 1 {
                    return fail("requires m >= 1".into());
                }
            }
            Ineq23 => {
                if params[0] < 2 {
                    return fail("requires m >= 2".into());
                }
            }
            Ineq26 => {
                let (m, r, n) = (params[0], params[1], params[2]);
                if m < 3 {
                    return fail("requires m >= 3".into());
                }
                if r < 1 || r > m - 1 {
                    return fail(format!("requires 1 <= r <= m-1, got m={m} r={r}"));
                }
                if n < r || (n - r) % m != 0 {
                    return fail(format!("requires n ≡ r (mod m), got m={m} r={r} n={n}"));
                }
            }
            Ineq27 => {
                let (k, r) = (params[0], params[1]);
                if k < 201 {
                    return fail("requires k >= 201".into());
                }
                if !(2..=4).contains(&r) {
                    return fail(format!("requires 2 <= r <= 4, got r={r}"));
                }
            }
            Ineq28 => {
                if params[0] < 6 {
                    return fail("requires n >= 6".into());
                }
            }
        }
        Ok(())
    }

    /// Default sweep rectangle, as `(name, lo, hi)` per parameter. Dependent
    /// edges (like `k <= floor(n/2)`) are applied per prefix when blocks are
    /// built; the rectangle only fixes the outer extent.
    pub fn desk_range(self) -> Vec<(&'static str, u64, u64)> {
        match self {
            RobbinsLower | RobbinsUpper => vec![("n", 1, 1000)],
            HirschhornLower | HirschhornUpper | HirschhornRemainder => vec![("n", 2, 1000)],
            Eq12Upper => vec![("m", 2, 10), ("n", 1, 200)],
            StanicaLower | StanicaUpper => vec![("m", 2, 8), ("p", 1, 7), ("n", 1, 100)],
            Thm21Rational => vec![("n", 4, 2000), ("k", 2, 1000)],
            Thm21Exp => vec![("n", 4, 300), ("k", 2, 150)],
            Thm22 => vec![("n", 1, 2000), ("k", 0, 2000)],
            Thm22Weak => vec![("n", 1, 1000), ("k", 0, 1000)],
            Thm23 => vec![("m", 3, 10), ("n", 5, 500)],
            Thm24Rational => vec![("n", 400, 1200), ("k", 80, 600)],
            Thm24Exp => vec![("n", 400, 600), ("k", 80, 300)],
            Thm24Pow2 => vec![("n", 400, 600), ("k", 80, 300)],
            Corollary21 => vec![("n", 400, 1200), ("k", 80, 960)],
            Lemma21Ratio => vec![("n", 3, 300), ("k", 0, 149)],
            Lemma22 => vec![("k", 80, 200), ("r", 0, 4)],
            Lemma23 => vec![("n", 1, 64), ("k", 0, 64)],
            Ineq21 => vec![("m", 1, 2000)],
            Ineq23 => vec![("m", 2, 2000)],
            Ineq25 => vec![("n", 4, 200), ("k", 2, 100)],
            Ineq26 => vec![("m", 3, 10), ("r", 1, 9), ("n", 1, 500)],
            Ineq27 => vec![("k", 201, 400), ("r", 2, 4)],
            Ineq28 => vec![("n", 6, 2000)],
        }
    }

    /// Whether block sweeps benefit from a precomputed `i^i` table, and if
    /// so the largest base needed for a given maximum leading parameter.
    pub(crate) fn self_pow_limit(self, max_first: u64, max_second: u64) -> Option<u64> {
        match self {
            Thm21Rational | Thm21Exp | Lemma21Ratio | Lemma23 | Thm24Rational | Thm24Exp
            | Corollary21 => Some(max_first),
            RobbinsLower | RobbinsUpper | HirschhornLower | HirschhornUpper
            | HirschhornRemainder => Some(max_first),
            Lemma22 => Some(max_first.saturating_mul(5).saturating_add(max_second.min(4))),
            _ => None,
        }
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.cli_name())
    }
}

/// Shared immutable scratch data for sweeps: a table of `i^i` up to some
/// limit. Built once per sweep, read from every worker. An empty workspace
/// is always valid; lookups fall back to direct exponentiation.
#[derive(Debug, Default)]
pub struct Workspace {
    sp: Vec<Natural>,
}

impl Workspace {
    pub fn empty() -> Self {
        Workspace::default()
    }

    /// Precompute `i^i` for `i <= limit` (`0^0 = 1`).
    pub fn with_self_pow(limit: u64) -> Self {
        let mut sp = Vec::with_capacity(limit as usize + 1);
        for i in 0..=limit {
            sp.push(exactnum::self_pow(i));
        }
        Workspace { sp }
    }

    /// Build whatever tables the given bound wants for a sweep whose first
    /// two parameter maxima are as given. Table size is capped (the table
    /// holds ~n^2 log n bits below the cap); beyond it, lookups fall back
    /// to direct exponentiation per point.
    pub fn for_bound(bound: BoundId, max_first: u64, max_second: u64) -> Self {
        match bound.self_pow_limit(max_first, max_second) {
            Some(limit) => Workspace::with_self_pow(limit.min(8192)),
            None => Workspace::empty(),
        }
    }

    /// `m^m`, from the table when available.
    pub fn sp(&self, m: u64) -> Natural {
        match self.sp.get(m as usize) {
            Some(v) => v.clone(),
            None => exactnum::self_pow(m),
        }
    }
}
