//! The sweep engine.
//!
//! A sweep takes a bound, one requested (or defaulted) inclusive range per
//! parameter, and walks every tuple of the requested box that satisfies the
//! bound's hypothesis. Enumeration is planned as blocks — a fixed prefix
//! plus a run of the final parameter — so the block checker can share
//! row-incremental state. Blocks run independently (optionally on a local
//! thread pool) and merge in plan order, so reports are deterministic for
//! any parallelism level.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_block, BlockOpts, BlockOut, BoundId, CheckRow, Mode, Workspace};
use crate::error::Error;
use crate::rigor::Verdict;
use crate::search::Strictness;
use crate::Result;

/// One planned unit of work: `prefix ++ [v]` for `v = lo, lo+step, ..<= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub prefix: Vec<u64>,
    pub lo: u64,
    pub hi: u64,
    pub step: u64,
}

impl Block {
    pub fn len(&self) -> u64 {
        if self.lo > self.hi {
            0
        } else {
            (self.hi - self.lo) / self.step + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Options for a sweep.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// `None`: share the global thread pool. `Some(t)`: a dedicated pool of
    /// `t` threads (1 gives strictly sequential execution).
    pub parallelism: Option<usize>,
    pub precision_cap: u32,
    /// Cap on stored failing/undecided parameter tuples.
    pub witness_cap: usize,
    /// Keep one `CheckRow` per point (forces the pointwise path; margins
    /// are reported per point).
    pub collect_rows: bool,
    /// Force a strictness instead of each bound's canonical one.
    pub strictness: Option<Strictness>,
    /// Force a decision mode instead of each bound's default.
    pub mode: Option<Mode>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            parallelism: None,
            precision_cap: crate::DEFAULT_PRECISION_CAP,
            witness_cap: 100,
            collect_rows: false,
            strictness: None,
            mode: None,
        }
    }
}

/// Aggregated outcome of one sweep. Serializes losslessly to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub bound: String,
    pub range_description: String,
    pub total: u64,
    pub holds: u64,
    pub fails: u64,
    pub undecided: u64,
    pub witnesses: Vec<Vec<u64>>,
    pub undecided_params: Vec<Vec<u64>>,
    pub max_precision_used: u32,
    pub wall_time_seconds: f64,
    /// True when the requested box contained tuples outside the hypothesis
    /// region (they are skipped, not failed).
    pub clipped: bool,
}

/// Static lower limit of a leading (prefix) axis.
fn prefix_min(bound: BoundId, pos: usize, prefix: &[u64]) -> u64 {
    use BoundId::*;
    match (pos, bound) {
        (0, RobbinsLower | RobbinsUpper | Ineq21 | Thm22 | Thm22Weak | Lemma23) => 1,
        (0, HirschhornLower | HirschhornUpper | HirschhornRemainder) => 2,
        (0, Eq12Upper | StanicaLower | StanicaUpper | Ineq23) => 2,
        (0, Thm23 | Ineq26 | Lemma21Ratio) => 3,
        (0, Thm21Rational | Thm21Exp | Ineq25) => 4,
        (0, Ineq28) => 6,
        (0, Lemma22) => 80,
        (0, Ineq27) => 201,
        (0, Thm24Rational | Thm24Exp | Thm24Pow2 | Corollary21) => 400,
        // middle axis of the 3-parameter bounds: 1 <= p (or r) <= m - 1
        (1, StanicaLower | StanicaUpper | Ineq26) => {
            debug_assert!(!prefix.is_empty());
            1
        }
        _ => 0,
    }
}

/// Static upper limit of a leading axis (`u64::MAX` when unbounded).
fn prefix_max(bound: BoundId, pos: usize, prefix: &[u64]) -> u64 {
    use BoundId::*;
    match (pos, bound) {
        (1, StanicaLower | StanicaUpper | Ineq26) => prefix[0] - 1,
        _ => u64::MAX,
    }
}

/// Hypothesis window `(min, max, step)` of the final axis given the prefix.
/// `None` when no final-axis value is admissible for this prefix.
fn axis_window(bound: BoundId, prefix: &[u64]) -> Option<(u64, u64, u64)> {
    use BoundId::*;
    let w = match bound {
        RobbinsLower | RobbinsUpper => (1, u64::MAX, 1),
        HirschhornLower | HirschhornUpper | HirschhornRemainder => (2, u64::MAX, 1),
        Eq12Upper | StanicaLower | StanicaUpper => (1, u64::MAX, 1),
        Thm21Rational | Thm21Exp | Ineq25 => (2, prefix[0] / 2, 1),
        Thm22 | Thm22Weak | Lemma23 => (0, prefix[0], 1),
        Thm23 => (
            u64::try_from(2u128 * u128::from(prefix[0]) - 1).ok()?,
            u64::MAX,
            1,
        ),
        Thm24Rational | Thm24Exp | Thm24Pow2 => (prefix[0] / 5, prefix[0] / 2, 1),
        Corollary21 => (
            prefix[0] / 5,
            u64::try_from(4u128 * u128::from(prefix[0]) / 5).expect("4n/5 fits"),
            1,
        ),
        Lemma21Ratio => (0, prefix[0] / 2 - 1, 1),
        Lemma22 => (0, 4, 1),
        Ineq21 => (1, u64::MAX, 1),
        Ineq23 => (2, u64::MAX, 1),
        Ineq26 => (prefix[1], u64::MAX, prefix[0]),
        Ineq27 => (2, 4, 1),
        Ineq28 => (6, u64::MAX, 1),
    };
    if w.0 > w.1 {
        None
    } else {
        Some(w)
    }
}

/// Intersect the requested final-axis range with the hypothesis window for
/// one prefix, aligning to the window's step. Returns the block (if any)
/// and whether anything requested was dropped.
fn clip_axis(
    bound: BoundId,
    prefix: &[u64],
    req_lo: u64,
    req_hi: u64,
) -> (Option<Block>, bool) {
    let Some((wmin, wmax, step)) = axis_window(bound, prefix) else {
        return (None, req_lo <= req_hi);
    };
    let mut lo = req_lo.max(wmin);
    let hi = req_hi.min(wmax);
    // Align a stepped axis to the residue class anchored at the window
    // minimum (n ≡ r (mod m), anchored at n = r).
    if step > 1 && lo > wmin {
        let over = (lo - wmin) % step;
        if over != 0 {
            match lo.checked_add(step - over) {
                Some(v) => lo = v,
                None => return (None, true),
            }
        }
    }
    if lo > hi {
        return (None, req_lo <= req_hi);
    }
    // Snap the top of a stepped range onto the lattice so `hi` is the last
    // enumerated point.
    let hi = if step > 1 { lo + (hi - lo) / step * step } else { hi };
    let narrowed = lo != req_lo || hi != req_hi;
    (
        Some(Block { prefix: prefix.to_vec(), lo, hi, step }),
        narrowed,
    )
}

const ONE_AXIS_CHUNK: u64 = 256;

/// Plan the blocks for a sweep of `bound` over the requested box
/// (`None` entries take the desk-range default). Returns the blocks, a
/// printable description of the effective box, and whether any requested
/// tuple was clipped away by the hypothesis.
pub fn blocks_for(
    bound: BoundId,
    requested: &[Option<(u64, u64)>],
) -> Result<(Vec<Block>, String, bool)> {
    let names = bound.param_names();
    if requested.len() != names.len() {
        return Err(Error::domain(format!(
            "{} takes {} range(s) ({}), got {}",
            bound.cli_name(),
            names.len(),
            names.join(", "),
            requested.len()
        )));
    }
    let desk = bound.desk_range();
    let ranges: Vec<(u64, u64)> = requested
        .iter()
        .zip(&desk)
        .map(|(req, &(_, dlo, dhi))| req.unwrap_or((dlo, dhi)))
        .collect();
    let description = names
        .iter()
        .zip(&ranges)
        .map(|(name, (lo, hi))| format!("{name}={lo}..{hi}"))
        .collect::<Vec<_>>()
        .join(", ");

    let mut blocks: Vec<Block> = Vec::new();
    let mut clipped = false;

    // Walk the prefix axes (all but the last), clipping each to its static
    // or prefix-dependent limits, then clip the final axis per prefix.
    fn descend(
        bound: BoundId,
        ranges: &[(u64, u64)],
        prefix: &mut Vec<u64>,
        blocks: &mut Vec<Block>,
        clipped: &mut bool,
    ) {
        let pos = prefix.len();
        if pos + 1 == ranges.len() {
            let (req_lo, req_hi) = ranges[pos];
            let (block, narrowed) = clip_axis(bound, prefix, req_lo, req_hi);
            *clipped |= narrowed;
            if let Some(b) = block {
                if bound.arity() == 1 {
                    // Chunk single-axis runs so they can spread over workers.
                    let mut start = b.lo;
                    while start <= b.hi {
                        let end = b.hi.min(start.saturating_add(ONE_AXIS_CHUNK - 1));
                        blocks.push(Block { prefix: Vec::new(), lo: start, hi: end, step: 1 });
                        match end.checked_add(1) {
                            Some(next) => start = next,
                            None => break,
                        }
                    }
                } else {
                    blocks.push(b);
                }
            }
            return;
        }
        let (req_lo, req_hi) = ranges[pos];
        let lo = req_lo.max(prefix_min(bound, pos, prefix));
        let hi = req_hi.min(prefix_max(bound, pos, prefix));
        if lo != req_lo || hi != req_hi {
            *clipped = true;
        }
        let mut v = lo;
        while v <= hi {
            prefix.push(v);
            descend(bound, ranges, prefix, blocks, clipped);
            prefix.pop();
            match v.checked_add(1) {
                Some(next) => v = next,
                None => break,
            }
        }
    }
    descend(bound, &ranges, &mut Vec::new(), &mut blocks, &mut clipped);

    if blocks.iter().map(Block::len).sum::<u64>() == 0 {
        return Err(Error::EmptyRange(format!(
            "{}: no admissible points in {}",
            bound.cli_name(),
            description
        )));
    }
    Ok((blocks, description, clipped))
}

/// The largest first/second parameter values over the planned blocks, used
/// to size precomputed tables.
fn table_maxima(blocks: &[Block]) -> (u64, u64) {
    let mut first = 0u64;
    let mut second = 0u64;
    for b in blocks {
        match b.prefix.len() {
            0 => first = first.max(b.hi),
            1 => {
                first = first.max(b.prefix[0]);
                second = second.max(b.hi);
            }
            _ => {
                first = first.max(b.prefix[0]);
                second = second.max(b.prefix[1]);
            }
        }
    }
    (first, second)
}

fn run_on_pool<T: Send>(
    parallelism: Option<usize>,
    job: impl FnOnce() -> Result<T> + Send,
) -> Result<T> {
    match parallelism {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::domain(format!("cannot build thread pool: {e}")))?;
            pool.install(job)
        }
        None => job(),
    }
}

fn aggregate(outs: Vec<BlockOut>, opts: &SweepOptions) -> BlockOut {
    let mut agg = BlockOut::new(opts.collect_rows);
    for out in outs {
        agg.merge(out, opts.witness_cap);
    }
    agg
}

fn finish(
    bound: BoundId,
    description: String,
    clipped: bool,
    agg: BlockOut,
    started: std::time::Instant,
) -> (SweepReport, Option<Vec<CheckRow>>) {
    let report = SweepReport {
        bound: bound.cli_name().to_string(),
        range_description: description,
        total: agg.total,
        holds: agg.holds,
        fails: agg.fails,
        undecided: agg.undecided,
        witnesses: agg.witnesses,
        undecided_params: agg.undecided_params,
        max_precision_used: agg.max_precision,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        clipped,
    };
    (report, agg.rows)
}

/// Sweep `bound` over the requested box. Rows are returned separately so
/// the report itself stays small and serializable.
pub fn sweep(
    bound: BoundId,
    requested: &[Option<(u64, u64)>],
    opts: &SweepOptions,
) -> Result<(SweepReport, Option<Vec<CheckRow>>)> {
    let started = std::time::Instant::now();
    let (blocks, description, clipped) = blocks_for(bound, requested)?;
    let (max_first, max_second) = table_maxima(&blocks);
    let ws = Workspace::for_bound(bound, max_first, max_second);
    let bopts = BlockOpts {
        cap: opts.precision_cap,
        strictness: opts.strictness,
        mode: opts.mode,
        witness_cap: opts.witness_cap,
        collect_rows: opts.collect_rows,
    };
    let outs = run_on_pool(opts.parallelism, || {
        blocks
            .par_iter()
            .map(|b| check_block(bound, &b.prefix, b.lo, b.hi, b.step, &ws, &bopts))
            .collect::<Result<Vec<BlockOut>>>()
    })?;
    Ok(finish(bound, description, clipped, aggregate(outs, opts), started))
}

/// Sweep the same planned tuples as [`sweep`] but decide each point with a
/// caller-supplied verdict function. This is how the test suite checks that
/// the engine reports failures: feed it a deliberately wrong comparison and
/// the witnesses must come back.
pub fn sweep_fn<F>(
    bound: BoundId,
    requested: &[Option<(u64, u64)>],
    opts: &SweepOptions,
    point: F,
) -> Result<SweepReport>
where
    F: Fn(&[u64]) -> Result<Verdict> + Sync,
{
    let started = std::time::Instant::now();
    let (blocks, description, clipped) = blocks_for(bound, requested)?;
    let point = &point;
    let outs = run_on_pool(opts.parallelism, || {
        blocks
            .par_iter()
            .map(|b| {
                let mut out = BlockOut::new(false);
                let mut v = b.lo;
                loop {
                    let mut params = b.prefix.clone();
                    params.push(v);
                    let verdict = point(&params)?.with_witness(&params);
                    out.record_verdict(&params, &verdict, opts.witness_cap);
                    match v.checked_add(b.step) {
                        Some(next) if next <= b.hi => v = next,
                        _ => break,
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<BlockOut>>>()
    })?;
    Ok(finish(bound, description, clipped, aggregate(outs, opts), started).0)
}

/// Sweep every catalogued bound over its desk range, in catalogue order.
pub fn regression_suite(opts: &SweepOptions) -> Result<Vec<SweepReport>> {
    BoundId::ALL
        .iter()
        .map(|&bound| {
            let requested = vec![None; bound.arity()];
            sweep(bound, &requested, opts).map(|(report, _)| report)
        })
        .collect()
}
