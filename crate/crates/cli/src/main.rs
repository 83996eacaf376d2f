//! Command-line front end: evaluate bound sides, certify single points,
//! sweep parameter boxes, compute the threshold index, and run the
//! window scan with its count statistic.
//!
//! Exit codes: 0 all checks passed, 1 a checked inequality failed,
//! 2 usage or input trouble, 3 a verdict stayed undecided at the
//! precision cap and `--strict-undecided` was set. A failure outranks
//! an undecided verdict when both occur.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use pascaline::bounds::{check, describe, BoundId, CheckRow, CheckSpec, Mode, Workspace};
use pascaline::search::{
    c23_from_pairs, c23_target, f_of_n, scan_pairs_with, Checkpoint, PairRecord, ScanStat,
    Strictness,
};
use pascaline::verify::{regression_suite, sweep, SweepOptions, SweepReport};
use pascaline::{Interval, State, Verdict, DEFAULT_PRECISION_CAP};

const MARGIN_DIGITS: usize = 17;
const CSV_HEADER: &str = "bound,p1,p2,p3,verdict,margin_lo,margin_hi,precision_bits";

#[derive(Parser)]
#[command(
    name = "pascaline",
    version,
    about = "Certified checks of factorial and binomial-coefficient inequalities",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrictnessArg {
    Strict,
    NonStrict,
}

impl From<StrictnessArg> for Strictness {
    fn from(v: StrictnessArg) -> Strictness {
        match v {
            StrictnessArg::Strict => Strictness::Strict,
            StrictnessArg::NonStrict => Strictness::NonStrict,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Interval,
}

impl From<ModeArg> for Mode {
    fn from(v: ModeArg) -> Mode {
        match v {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Interval => Mode::Interval,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print both sides of a bound (or family) at one parameter point
    Eval {
        /// Bound or family name; `pascaline list` shows them all
        name: String,
        /// Parameter values, in the order `list` reports
        params: Vec<u64>,
        /// Working precision in bits for enclosed sides
        #[arg(long, default_value_t = 96)]
        precision: u32,
    },
    /// Certify one bound at one parameter point
    Check {
        /// Bound name (families are not allowed here; use `verify`)
        bound: String,
        /// Parameter values, in the order `list` reports
        params: Vec<u64>,
        /// Adaptive refinement stops at this many bits
        #[arg(long, env = "PASCALINE_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
        precision_cap: u32,
        /// Override the bound's canonical strict/non-strict reading
        #[arg(long, value_enum)]
        strictness: Option<StrictnessArg>,
        /// Force exact clearing or interval evaluation
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Exit 3 if the verdict is still undecided at the cap
        #[arg(long)]
        strict_undecided: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Sweep a bound, a family, or `all` over parameter ranges
    Verify {
        /// Bound name, family name, or `all` for the built-in desk ranges
        target: String,
        /// Range for parameter n, inclusive, e.g. 4..2000
        #[arg(long, value_name = "LO..HI")]
        n: Option<String>,
        /// Range for parameter k
        #[arg(long, value_name = "LO..HI")]
        k: Option<String>,
        /// Range for parameter m
        #[arg(long, value_name = "LO..HI")]
        m: Option<String>,
        /// Range for parameter p
        #[arg(long, value_name = "LO..HI")]
        p: Option<String>,
        /// Range for parameter r
        #[arg(long, value_name = "LO..HI")]
        r: Option<String>,
        /// Worker threads (default: one per core)
        #[arg(long, env = "PASCALINE_PARALLELISM")]
        parallelism: Option<usize>,
        #[arg(long, env = "PASCALINE_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
        precision_cap: u32,
        #[arg(long, value_enum)]
        strictness: Option<StrictnessArg>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Keep at most this many counterexample tuples
        #[arg(long, default_value_t = 100)]
        witness_cap: usize,
        /// Exit 3 if any point is undecided at the cap
        #[arg(long)]
        strict_undecided: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Compute the threshold index f(n), the least k with (n+1)C(n,k) > 2^n
    F {
        /// First (or only) argument n; requires n >= 3
        lo: u64,
        /// If given, print a table for lo..=hi
        hi: Option<u64>,
    },
    /// Scan n = 2..x for C(n, f(n)) inside (2^n/(n+1), 2^n/n]
    Scan {
        /// Upper end of the scan (inclusive)
        x: u64,
        /// Write pair rows and the summary block to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Persist a resumable checkpoint here after each completed wave
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Resume from a checkpoint file written by --checkpoint
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Working precision in bits for the statistic enclosures
        #[arg(long, default_value_t = 96)]
        precision: u32,
    },
    /// Report the window-hit count statistic against (pi/2)^(1/3)
    Stat {
        /// Upper end of the scan feeding the count (inclusive)
        x: u64,
        /// Count only strict or only non-strict hits (default: report both)
        #[arg(long, value_enum)]
        strictness: Option<StrictnessArg>,
        /// Working precision in bits for the enclosures
        #[arg(long, default_value_t = 96)]
        precision: u32,
    },
    /// List every bound with its parameters, families, and modes
    List,
}

fn usage(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn run_err(e: pascaline::Error) -> ! {
    eprintln!("error: {e}");
    std::process::exit(2);
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Eval { name, params, precision } => cmd_eval(&name, &params, precision),
        Cmd::Check { bound, params, precision_cap, strictness, mode, strict_undecided, format } => {
            cmd_check(&bound, &params, precision_cap, strictness, mode, strict_undecided, format)
        }
        Cmd::Verify {
            target,
            n,
            k,
            m,
            p,
            r,
            parallelism,
            precision_cap,
            strictness,
            mode,
            witness_cap,
            strict_undecided,
            format,
        } => {
            let ranges = RangeFlags { n, k, m, p, r };
            let opts = SweepOptions {
                parallelism,
                precision_cap,
                witness_cap,
                collect_rows: format == FormatArg::Csv,
                strictness: strictness.map(Into::into),
                mode: mode.map(Into::into),
            };
            cmd_verify(&target, &ranges, &opts, strict_undecided, format)
        }
        Cmd::F { lo, hi } => cmd_f(lo, hi),
        Cmd::Scan { x, out, checkpoint, resume, precision } => {
            cmd_scan(x, out, checkpoint, resume, precision)
        }
        Cmd::Stat { x, strictness, precision } => cmd_stat(x, strictness, precision),
        Cmd::List => cmd_list(),
    };
    std::process::exit(code);
}

fn lookup_bound(name: &str) -> BoundId {
    match BoundId::from_cli_name(name) {
        Some(b) => b,
        None => {
            let members = BoundId::family(name);
            if members.is_empty() {
                usage(&format!("unknown bound '{name}'; run `pascaline list` for the catalogue"));
            } else {
                usage(&format!(
                    "'{name}' is a family ({}); `check` takes a single bound",
                    members.iter().map(|b| b.cli_name()).collect::<Vec<_>>().join(", ")
                ));
            }
        }
    }
}

fn check_arity(bound: BoundId, params: &[u64]) {
    if params.len() != bound.arity() {
        usage(&format!(
            "{} takes {} parameter(s) ({}), got {}",
            bound.cli_name(),
            bound.arity(),
            bound.param_names().join(", "),
            params.len()
        ));
    }
}

fn workspace_for(bound: BoundId, params: &[u64]) -> Workspace {
    Workspace::for_bound(
        bound,
        params.first().copied().unwrap_or(0),
        params.get(1).copied().unwrap_or(0),
    )
}

fn param_assignments(bound: BoundId, params: &[u64]) -> String {
    bound
        .param_names()
        .iter()
        .zip(params)
        .map(|(name, v)| format!("{name}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------- eval

fn cmd_eval(name: &str, params: &[u64], precision: u32) -> i32 {
    let members = BoundId::family(name);
    if members.is_empty() {
        usage(&format!("unknown bound or family '{name}'; run `pascaline list` for the catalogue"));
    }
    for b in &members {
        check_arity(*b, params);
    }
    println!(
        "{} at {}",
        members.iter().map(|b| b.cli_name()).collect::<Vec<_>>().join(", "),
        param_assignments(members[0], params)
    );
    let mut seen: Vec<String> = Vec::new();
    for b in members {
        let ws = workspace_for(b, params);
        let lines = describe(b, params, precision, &ws).unwrap_or_else(|e| run_err(e));
        for (label, value) in lines {
            if seen.iter().any(|s| *s == label) {
                continue;
            }
            println!("  {label} = {value}");
            seen.push(label);
        }
    }
    0
}

// ---------------------------------------------------------------- check

fn margin_cells(margin: Option<&Interval>) -> (String, String) {
    match margin {
        Some(iv) => iv.to_decimal_pair(MARGIN_DIGITS),
        None => (String::new(), String::new()),
    }
}

fn csv_row(bound: BoundId, params: &[u64], state: State, margin: Option<&Interval>, precision: u32) -> String {
    let mut cols: Vec<String> = params.iter().map(|v| v.to_string()).collect();
    while cols.len() < 3 {
        cols.push(String::new());
    }
    let (lo, hi) = margin_cells(margin);
    format!(
        "{},{},{},{},{},{},{},{}",
        bound.cli_name(),
        cols[0],
        cols[1],
        cols[2],
        state.as_str(),
        lo,
        hi,
        precision
    )
}

fn exit_code(any_fail: bool, any_undecided: bool, strict_undecided: bool) -> i32 {
    if any_fail {
        1
    } else if any_undecided && strict_undecided {
        3
    } else {
        0
    }
}

fn cmd_check(
    name: &str,
    params: &[u64],
    precision_cap: u32,
    strictness: Option<StrictnessArg>,
    mode: Option<ModeArg>,
    strict_undecided: bool,
    format: FormatArg,
) -> i32 {
    let bound = lookup_bound(name);
    check_arity(bound, params);
    let mut spec = CheckSpec::new(bound, params).with_cap(precision_cap);
    if let Some(s) = strictness {
        spec = spec.with_strictness(s.into());
    }
    if let Some(m) = mode {
        spec = spec.with_mode(m.into());
    }
    let ws = workspace_for(bound, params);
    let verdict: Verdict = check(&spec, &ws).unwrap_or_else(|e| run_err(e));
    match format {
        FormatArg::Text => {
            println!(
                "{}({}): {}",
                bound.cli_name(),
                param_assignments(bound, params),
                verdict.state.as_str()
            );
            if let Some(margin) = &verdict.margin {
                let (lo, hi) = margin.to_decimal_pair(MARGIN_DIGITS);
                println!("  margin (rhs - lhs, enclosed): [{lo}, {hi}]");
            }
            println!("  precision used: {} bits", verdict.precision_used);
            if let Some(w) = &verdict.witness {
                println!("  counterexample at {}", param_assignments(bound, w));
            }
        }
        FormatArg::Csv => {
            println!("{CSV_HEADER}");
            println!(
                "{}",
                csv_row(bound, params, verdict.state, verdict.margin.as_ref(), verdict.precision_used)
            );
        }
        FormatArg::Structured => {
            let (lo, hi) = margin_cells(verdict.margin.as_ref());
            let doc = serde_json::json!({
                "bound": bound.cli_name(),
                "params": params,
                "verdict": verdict.state.as_str(),
                "margin_lo": lo,
                "margin_hi": hi,
                "precision_bits": verdict.precision_used,
                "witness": verdict.witness,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    exit_code(verdict.state == State::Fails, verdict.state == State::Undecided, strict_undecided)
}

// ---------------------------------------------------------------- verify

struct RangeFlags {
    n: Option<String>,
    k: Option<String>,
    m: Option<String>,
    p: Option<String>,
    r: Option<String>,
}

impl RangeFlags {
    fn get(&self, name: &str) -> Option<&str> {
        match name {
            "n" => self.n.as_deref(),
            "k" => self.k.as_deref(),
            "m" => self.m.as_deref(),
            "p" => self.p.as_deref(),
            "r" => self.r.as_deref(),
            _ => None,
        }
    }

    fn provided(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, v) in
            [("n", &self.n), ("k", &self.k), ("m", &self.m), ("p", &self.p), ("r", &self.r)]
        {
            if v.is_some() {
                out.push(name);
            }
        }
        out
    }
}

fn parse_range(flag: &str, text: &str) -> (u64, u64) {
    let parse_end = |s: &str| -> u64 {
        s.trim().parse::<u64>().unwrap_or_else(|_| {
            usage(&format!("--{flag}: cannot parse '{}' as an unsigned integer", s.trim()))
        })
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let lo = parse_end(a);
            let hi = parse_end(b);
            if lo > hi {
                usage(&format!("--{flag}: range {lo}..{hi} is reversed"));
            }
            (lo, hi)
        }
        None => {
            let v = parse_end(text);
            (v, v)
        }
    }
}

fn print_report_text(rep: &SweepReport, bound: Option<BoundId>, witness_cap: usize) {
    let clip = if rep.clipped { ", clipped to hypothesis region" } else { "" };
    println!(
        "{}  {}  {} points: {} holds, {} fails, {} undecided  (max {} bits, {:.2} s{})",
        rep.bound,
        rep.range_description,
        rep.total,
        rep.holds,
        rep.fails,
        rep.undecided,
        rep.max_precision_used,
        rep.wall_time_seconds,
        clip
    );
    let name_tuple = |t: &Vec<u64>| match bound {
        Some(b) => param_assignments(b, t),
        None => format!("{t:?}"),
    };
    for w in rep.witnesses.iter().take(witness_cap) {
        println!("  fails at {}", name_tuple(w));
    }
    if rep.fails as usize > rep.witnesses.len() {
        println!("  ... and {} more failures", rep.fails as usize - rep.witnesses.len());
    }
    for u in rep.undecided_params.iter().take(witness_cap) {
        println!("  undecided at {}", name_tuple(u));
    }
    if rep.undecided as usize > rep.undecided_params.len() {
        println!(
            "  ... and {} more undecided points",
            rep.undecided as usize - rep.undecided_params.len()
        );
    }
}

fn cmd_verify(
    target: &str,
    ranges: &RangeFlags,
    opts: &SweepOptions,
    strict_undecided: bool,
    format: FormatArg,
) -> i32 {
    let provided = ranges.provided();
    if target == "all" {
        if !provided.is_empty() {
            usage(&format!(
                "`verify all` sweeps the built-in desk ranges; --{} only applies to a named bound or family",
                provided[0]
            ));
        }
        if format == FormatArg::Csv {
            usage("csv output is one row per checked point; use it with a named bound or family");
        }
        let reports = regression_suite(opts).unwrap_or_else(|e| run_err(e));
        return finish_verify(&reports, opts.witness_cap, strict_undecided, format);
    }

    let members = BoundId::family(target);
    if members.is_empty() {
        usage(&format!("unknown bound or family '{target}'; run `pascaline list` for the catalogue"));
    }
    for flag in &provided {
        if !members.iter().all(|b| b.param_names().contains(flag)) {
            usage(&format!(
                "--{flag} does not apply to {} (parameters: {})",
                target,
                members[0].param_names().join(", ")
            ));
        }
    }

    let mut reports: Vec<SweepReport> = Vec::new();
    let mut rows: Vec<(BoundId, Vec<CheckRow>)> = Vec::new();
    for b in &members {
        let requested: Vec<Option<(u64, u64)>> = b
            .param_names()
            .iter()
            .map(|pn| ranges.get(pn).map(|text| parse_range(pn, text)))
            .collect();
        let (rep, r) = sweep(*b, &requested, opts).unwrap_or_else(|e| run_err(e));
        reports.push(rep);
        if let Some(r) = r {
            rows.push((*b, r));
        }
    }

    if format == FormatArg::Csv {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        writeln!(out, "{CSV_HEADER}").expect("stdout");
        for (b, rs) in &rows {
            for row in rs {
                writeln!(out, "{}", csv_row(*b, &row.params, row.state, row.margin.as_ref(), row.precision))
                    .expect("stdout");
            }
        }
        let any_fail = reports.iter().any(|r| r.fails > 0);
        let any_und = reports.iter().any(|r| r.undecided > 0);
        return exit_code(any_fail, any_und, strict_undecided);
    }

    finish_verify(&reports, opts.witness_cap, strict_undecided, format)
}

fn finish_verify(
    reports: &[SweepReport],
    witness_cap: usize,
    strict_undecided: bool,
    format: FormatArg,
) -> i32 {
    match format {
        FormatArg::Text => {
            for rep in reports {
                print_report_text(rep, BoundId::from_cli_name(&rep.bound), witness_cap);
            }
            if reports.len() > 1 {
                let points: u64 = reports.iter().map(|r| r.total).sum();
                let fails: u64 = reports.iter().map(|r| r.fails).sum();
                let und: u64 = reports.iter().map(|r| r.undecided).sum();
                println!(
                    "total: {} sweeps, {} points, {} fails, {} undecided",
                    reports.len(),
                    points,
                    fails,
                    und
                );
            }
        }
        FormatArg::Structured => {
            println!("{}", serde_json::to_string_pretty(reports).expect("serializable"));
        }
        FormatArg::Csv => unreachable!("csv handled by caller"),
    }
    let any_fail = reports.iter().any(|r| r.fails > 0);
    let any_und = reports.iter().any(|r| r.undecided > 0);
    exit_code(any_fail, any_und, strict_undecided)
}

// ---------------------------------------------------------------- f

fn cmd_f(lo: u64, hi: Option<u64>) -> i32 {
    let hi = hi.unwrap_or(lo);
    if hi < lo {
        usage(&format!("f: range {lo}..{hi} is reversed"));
    }
    for n in lo..=hi {
        let f = f_of_n(n).unwrap_or_else(|e| run_err(e));
        println!("f({n}) = {f}");
    }
    0
}

// ---------------------------------------------------------------- scan

fn scan_summary(x: u64, pairs: &[PairRecord], precision: u32) -> Vec<String> {
    let nonstrict: ScanStat = c23_from_pairs(pairs, x, Strictness::NonStrict, precision);
    let strict: ScanStat = c23_from_pairs(pairs, x, Strictness::Strict, precision);
    vec![
        format!("# pairs: {}", pairs.len()),
        format!("# count (3 <= n <= {x}, non-strict): {}", nonstrict.count),
        format!("# count (3 <= n <= {x}, strict): {}", strict.count),
        format!("# statistic non-strict: count/sqrt(x/log x) = {:.30}", nonstrict.statistic),
        format!("# statistic strict: count/sqrt(x/log x) = {:.30}", strict.statistic),
        format!("# target (pi/2)^(1/3) = {:.30}", c23_target(precision)),
    ]
}

fn cmd_scan(
    x: u64,
    out: Option<PathBuf>,
    checkpoint: Option<PathBuf>,
    resume: Option<PathBuf>,
    precision: u32,
) -> i32 {
    let resume_cp = resume.map(|path| {
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| usage(&format!("cannot read checkpoint {}: {e}", path.display())));
        Checkpoint::from_json(&text).unwrap_or_else(|e| run_err(e))
    });
    let (pairs, _final_cp) = scan_pairs_with(x, resume_cp, |cp| {
        if let Some(path) = &checkpoint {
            std::fs::write(path, cp.to_json()).map_err(|e| {
                pascaline::Error::Checkpoint(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        Ok(())
    })
    .unwrap_or_else(|e| run_err(e));

    let mut lines: Vec<String> = Vec::new();
    lines.push(format!("# scan n = 2..{x}: C(n, f(n)) inside (2^n/(n+1), 2^n/n]"));
    lines.push("# columns: n,k,binom,strict_upper,certified_f".to_string());
    for p in &pairs {
        lines.push(format!("{},{},{},{},{}", p.n, p.k, p.binom, p.strict_upper, p.certified_f));
    }
    let summary = scan_summary(x, &pairs, precision);
    lines.extend(summary.iter().cloned());

    match out {
        Some(path) => {
            let mut text = lines.join("\n");
            text.push('\n');
            std::fs::write(&path, text)
                .unwrap_or_else(|e| usage(&format!("cannot write {}: {e}", path.display())));
            println!("# wrote {} pair rows to {}", pairs.len(), path.display());
            for line in &summary {
                println!("{line}");
            }
        }
        None => {
            for line in &lines {
                println!("{line}");
            }
        }
    }
    0
}

// ---------------------------------------------------------------- stat

fn print_stat(stat: &ScanStat) {
    let label = match stat.strictness {
        Strictness::NonStrict => "non-strict",
        Strictness::Strict => "strict",
    };
    println!("count (3 <= n <= {}, {label}) = {}", stat.x, stat.count);
    println!("  statistic count/sqrt(x/log x) = {:.30}", stat.statistic);
}

fn cmd_stat(x: u64, strictness: Option<StrictnessArg>, precision: u32) -> i32 {
    let run = |s: Strictness| -> ScanStat {
        pascaline::search::c23_statistic(x, s, precision).unwrap_or_else(|e| run_err(e))
    };
    match strictness {
        Some(s) => print_stat(&run(s.into())),
        None => {
            print_stat(&run(Strictness::NonStrict));
            print_stat(&run(Strictness::Strict));
        }
    }
    println!("target (pi/2)^(1/3) = {:.30}", c23_target(precision));
    0
}

// ---------------------------------------------------------------- list

fn cmd_list() -> i32 {
    println!("bounds (name  parameters  modes  canonical comparison):");
    for b in BoundId::ALL {
        let modes = match (b.supports_exact(), b.supports_interval()) {
            (true, true) => "exact+interval",
            (true, false) => "exact",
            (false, true) => "interval",
            (false, false) => "none",
        };
        let strict = match b.canonical_strictness() {
            Strictness::Strict => "strict",
            Strictness::NonStrict => "non-strict",
        };
        println!(
            "  {:<22} {:<10} {:<15} {}",
            b.cli_name(),
            b.param_names().join(","),
            modes,
            strict
        );
    }
    println!("families: robbins, hirschhorn, stanica, thm21, thm24");
    0
}
