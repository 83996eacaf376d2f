//! Threshold search `f(n)`, window certification and the pair scan.
//!
//! `f(n)` is the least `k` in `[1, ceil(n/2)]` with `(n+1) C(n,k) > 2^n`;
//! the predicate is monotone there because `C(n, k)` is non-decreasing up to
//! the middle, so binary search is sound. A *pair* `(n, k)` is recorded when
//! `C(n, f(n))` also sits inside the window `(2^n/(n+1), 2^n/n]`; for
//! `n >= 6` that window membership certifies `k = f(n)` and the scan
//! cross-checks it. All arithmetic here is exact.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactnum::{binomial, rat_nat, Natural, Rational};
use crate::rigor::{log, pi_enclosure, pow, sqrt, Interval};
use crate::Result;

/// Whether a count or check uses `<` or `<=` on the window's upper edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strictness {
    Strict,
    NonStrict,
}

/// `(n+1) * C(n,k) > 2^n`.
fn threshold_holds(n: u64, k: u64) -> bool {
    let c = binomial(n, k);
    c * Natural::from(n + 1) > (BigUint::one() << n)
}

fn bsearch_f(n: u64, mut lo: u64, mut hi: u64) -> u64 {
    // Invariant: the least k with the threshold property lies in [lo, hi].
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if threshold_holds(n, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `f(n)` for `n >= 3`, with an optional warm-start hint (typically the
/// previous `n`'s value). The hint only chooses the fast path; the result is
/// always verified minimal.
pub(crate) fn f_unchecked(n: u64, hint: Option<u64>) -> u64 {
    let hi_limit = n.div_ceil(2);
    if let Some(h) = hint {
        let lo = h.saturating_sub(1).max(1);
        let hi = (h + 2).min(hi_limit);
        if lo <= hi && (lo == 1 || !threshold_holds(n, lo - 1)) {
            for k in lo..=hi {
                if threshold_holds(n, k) {
                    return k;
                }
            }
            if hi < hi_limit {
                return bsearch_f(n, hi + 1, hi_limit);
            }
        } else if lo > 1 {
            return bsearch_f(n, 1, lo - 1);
        }
    }
    bsearch_f(n, 1, hi_limit)
}

/// Least `k` with `(n+1) C(n,k) > 2^n`. Defined for `n >= 3`.
pub fn f_of_n(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain(format!("f(n) requires n >= 3, got {n}")));
    }
    let f = f_unchecked(n, None);
    debug_assert!(threshold_holds(n, f));
    debug_assert!(f == 1 || !threshold_holds(n, f - 1));
    Ok(f)
}

/// Certify `2^n/(n+1) < C(n,k) <= 2^n/n` by exact arithmetic.
///
/// For `n >= 6`, window membership forces `k = f(n)`; this is cross-checked
/// and a mismatch is reported as an integrity error rather than swallowed.
pub fn thm25_certify(n: u64, k: u64) -> Result<bool> {
    if n < 6 {
        return Err(Error::domain(format!("window certification requires n >= 6, got {n}")));
    }
    if k < 1 || k > n / 2 {
        return Err(Error::domain(format!("window certification requires 1 <= k <= n/2, got k={k}")));
    }
    let c = binomial(n, k);
    let two_n = BigUint::one() << n;
    let in_window = &c * Natural::from(n + 1) > two_n && &c * Natural::from(n) <= two_n;
    if in_window {
        let f = f_unchecked(n, Some(k));
        if f != k {
            return Err(Error::Integrity(format!(
                "window membership at (n={n}, k={k}) disagrees with threshold search f({n})={f}"
            )));
        }
    }
    Ok(in_window)
}

/// One recorded hit of the scan: `C(n,k)` inside `(2^n/(n+1), 2^n/n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRecord {
    pub n: u64,
    pub k: u64,
    pub binom: Natural,
    /// Exact window edges `2^n/(n+1)` and `2^n/n`, in lowest terms.
    pub window_low: Rational,
    pub window_high: Rational,
    /// Whether the upper edge is attained strictly (`n*C(n,k) < 2^n`).
    pub strict_upper: bool,
    /// Whether window membership was certified to pin `k = f(n)`
    /// (requires `n >= 6`).
    pub certified_f: bool,
}

fn scan_one(n: u64, hint: Option<u64>) -> Result<(Option<PairRecord>, Option<u64>)> {
    if n < 2 {
        return Ok((None, None));
    }
    let (k, next_hint) = if n == 2 {
        // f is defined from n = 3 on; n = 2 is tested directly at k = 1.
        (1, None)
    } else {
        let f = f_unchecked(n, hint);
        (f, Some(f))
    };
    let c = binomial(n, k);
    let two_n = BigUint::one() << n;
    if &c * Natural::from(n + 1) <= two_n.clone() {
        return Err(Error::Integrity(format!("scan produced k={k} below the threshold at n={n}")));
    }
    if &c * Natural::from(n) > two_n {
        return Ok((None, next_hint));
    }
    let strict_upper = &c * Natural::from(n) < (BigUint::one() << n);
    let certified_f = if n >= 6 && k <= n / 2 { thm25_certify(n, k)? } else { false };
    let record = PairRecord {
        n,
        k,
        binom: c,
        window_low: rat_nat(BigUint::one() << n, Natural::from(n + 1)),
        window_high: rat_nat(BigUint::one() << n, Natural::from(n)),
        strict_upper,
        certified_f,
    };
    Ok((Some(record), next_hint))
}

fn scan_block(a: u64, b: u64) -> Result<Vec<PairRecord>> {
    let mut out = Vec::new();
    let mut hint = None;
    for n in a..=b {
        let (rec, next_hint) = scan_one(n, hint)?;
        hint = next_hint;
        if let Some(r) = rec {
            out.push(r);
        }
    }
    Ok(out)
}

/// Resumable scan state. The serialised form stores pair values as decimal
/// strings; loading re-validates structure and recomputes a deterministic
/// sample of the stored binomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub format_version: u32,
    pub scan_id: String,
    pub last_completed_n: u64,
    pub pairs: Vec<PairRecord>,
}

pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    format_version: u32,
    scan_id: String,
    last_completed_n: u64,
    pairs: Vec<PairFile>,
}

#[derive(Serialize, Deserialize)]
struct PairFile {
    n: u64,
    k: u64,
    binom: String,
    strict_upper: bool,
    certified_f: bool,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl Checkpoint {
    pub fn to_json(&self) -> String {
        let file = CheckpointFile {
            format_version: self.format_version,
            scan_id: self.scan_id.clone(),
            last_completed_n: self.last_completed_n,
            pairs: self
                .pairs
                .iter()
                .map(|p| PairFile {
                    n: p.n,
                    k: p.k,
                    binom: p.binom.to_string(),
                    strict_upper: p.strict_upper,
                    certified_f: p.certified_f,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("checkpoint serialisation cannot fail")
    }

    /// Parse and validate a checkpoint.
    ///
    /// Structural checks: version, ascending `n`, `n` within
    /// `last_completed_n`. Integrity check: a deterministic pseudo-random
    /// sample (up to 8 entries, seeded from the checkpoint content) of
    /// stored binomials is recomputed from scratch and window membership is
    /// re-verified.
    pub fn from_json(text: &str) -> Result<Checkpoint> {
        let file: CheckpointFile =
            serde_json::from_str(text).map_err(|e| Error::Checkpoint(format!("bad JSON: {e}")))?;
        if file.format_version != CHECKPOINT_FORMAT_VERSION {
            return Err(Error::Checkpoint(format!(
                "unsupported format_version {} (expected {})",
                file.format_version, CHECKPOINT_FORMAT_VERSION
            )));
        }
        let mut pairs = Vec::with_capacity(file.pairs.len());
        let mut prev_n = 0u64;
        for p in &file.pairs {
            if p.n <= prev_n {
                return Err(Error::Checkpoint(format!("pair list not strictly ascending at n={}", p.n)));
            }
            prev_n = p.n;
            if p.n > file.last_completed_n {
                return Err(Error::Checkpoint(format!(
                    "pair n={} exceeds last_completed_n={}",
                    p.n, file.last_completed_n
                )));
            }
            let binom: Natural = p
                .binom
                .parse()
                .map_err(|_| Error::Checkpoint(format!("binomial at n={} is not a decimal integer", p.n)))?;
            pairs.push(PairRecord {
                n: p.n,
                k: p.k,
                binom,
                window_low: rat_nat(BigUint::one() << p.n, Natural::from(p.n + 1)),
                window_high: rat_nat(BigUint::one() << p.n, Natural::from(p.n)),
                strict_upper: p.strict_upper,
                certified_f: p.certified_f,
            });
        }
        let cp = Checkpoint {
            format_version: file.format_version,
            scan_id: file.scan_id,
            last_completed_n: file.last_completed_n,
            pairs,
        };
        cp.verify_sample()?;
        Ok(cp)
    }

    fn verify_sample(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Ok(());
        }
        let mut seed = self.last_completed_n ^ (self.pairs.len() as u64).rotate_left(17);
        for b in self.scan_id.bytes() {
            seed = seed.wrapping_mul(131).wrapping_add(b as u64);
        }
        // Distinct indices (partial Fisher-Yates), so short lists are
        // rechecked in full.
        let sample = 8.min(self.pairs.len());
        let mut indices: Vec<usize> = (0..self.pairs.len()).collect();
        for i in 0..sample {
            let j = i + (splitmix64(&mut seed) as usize) % (indices.len() - i);
            indices.swap(i, j);
        }
        for &idx in &indices[..sample] {
            let p = &self.pairs[idx];
            let c = binomial(p.n, p.k);
            if c != p.binom {
                return Err(Error::Checkpoint(format!(
                    "stored C({},{}) disagrees with recomputation",
                    p.n, p.k
                )));
            }
            let two_n = BigUint::one() << p.n;
            let above_low = &c * Natural::from(p.n + 1) > two_n.clone();
            let below_high = &c * Natural::from(p.n) <= two_n.clone();
            let strict = &c * Natural::from(p.n) < two_n;
            if !above_low || !below_high || strict != p.strict_upper {
                return Err(Error::Checkpoint(format!(
                    "stored pair (n={}, k={}) fails window recheck",
                    p.n, p.k
                )));
            }
        }
        Ok(())
    }
}

/// Scan `n` up to `n_max`, resuming from a checkpoint if given, invoking
/// `on_block` with a consistent snapshot after each completed wave of
/// blocks (callers persist it there).
pub fn scan_pairs_with(
    n_max: u64,
    resume: Option<Checkpoint>,
    mut on_block: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<(Vec<PairRecord>, Checkpoint)> {
    if n_max < 2 {
        return Err(Error::domain(format!("scan requires n_max >= 2, got {n_max}")));
    }
    let (start, scan_id, mut pairs) = match resume {
        Some(cp) => {
            if cp.last_completed_n >= n_max {
                let pairs: Vec<PairRecord> =
                    cp.pairs.iter().filter(|p| p.n <= n_max).cloned().collect();
                return Ok((pairs.clone(), cp));
            }
            (cp.last_completed_n + 1, cp.scan_id, cp.pairs)
        }
        None => {
            let id = format!(
                "scan-{}",
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_micros())
                    .unwrap_or(0)
            );
            (2, id, Vec::new())
        }
    };

    const BLOCK: u64 = 128;
    let blocks: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut a = start;
        while a <= n_max {
            let b = (a + BLOCK - 1).min(n_max);
            v.push((a, b));
            a = b + 1;
        }
        v
    };
    let wave = rayon::current_num_threads().max(1) * 2;
    let mut checkpoint = Checkpoint {
        format_version: CHECKPOINT_FORMAT_VERSION,
        scan_id: scan_id.clone(),
        last_completed_n: start.saturating_sub(1),
        pairs: pairs.clone(),
    };
    for group in blocks.chunks(wave) {
        let results: Vec<Result<Vec<PairRecord>>> =
            group.par_iter().map(|&(a, b)| scan_block(a, b)).collect();
        for (i, res) in results.into_iter().enumerate() {
            pairs.extend(res?);
            checkpoint.last_completed_n = group[i].1;
        }
        checkpoint.pairs = pairs.clone();
        on_block(&checkpoint)?;
    }
    Ok((pairs, checkpoint))
}

/// Scan without checkpoint persistence.
pub fn scan_pairs(n_max: u64, resume: Option<Checkpoint>) -> Result<(Vec<PairRecord>, Checkpoint)> {
    scan_pairs_with(n_max, resume, |_| Ok(()))
}

/// The scan statistic at `x` with its comparison target.
#[derive(Clone, Debug)]
pub struct ScanStat {
    pub x: u64,
    pub strictness: Strictness,
    pub count: u64,
    /// Enclosure of `count / sqrt(x / log x)`.
    pub statistic: Interval,
    /// Enclosure of `(pi/2)^(1/3)`.
    pub target: Interval,
}

/// Enclosure of `(pi/2)^(1/3)`.
pub fn c23_target(p: u32) -> Interval {
    let w = p + 16;
    let half_pi = pi_enclosure(w).scale2(-1);
    let third = Interval::from_rational(&crate::exactnum::rat(1, 3), w);
    pow(&half_pi, &third, p).expect("pi/2 is strictly positive")
}

/// Compute the statistic from an existing pair list (must cover `x`).
pub fn c23_from_pairs(pairs: &[PairRecord], x: u64, strictness: Strictness, p: u32) -> ScanStat {
    let count = pairs
        .iter()
        .filter(|pr| {
            pr.n >= 3
                && pr.n <= x
                && match strictness {
                    Strictness::NonStrict => true,
                    Strictness::Strict => pr.strict_upper,
                }
        })
        .count() as u64;
    let w = p + 16;
    let x_iv = Interval::from_u64(x);
    let lx = log(&x_iv, w).expect("x >= 3 is positive");
    let ratio = x_iv.div(&lx, w).expect("log x > 0 for x >= 3");
    let denom = sqrt(&ratio, w).expect("x/log x > 0");
    let statistic = Interval::from_u64(count).div(&denom, p).expect("denominator is positive");
    ScanStat { x, strictness, count, statistic, target: c23_target(p) }
}

/// Count window hits for `3 <= n <= x` and form `count / sqrt(x/log x)`
/// next to its conjectured limit `(pi/2)^(1/3)`.
pub fn c23_statistic(x: u64, strictness: Strictness, p: u32) -> Result<ScanStat> {
    if x < 3 {
        return Err(Error::domain(format!("statistic requires x >= 3, got {x}")));
    }
    let (pairs, _) = scan_pairs(x, None)?;
    Ok(c23_from_pairs(&pairs, x, strictness, p))
}
