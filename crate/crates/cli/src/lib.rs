//! Command implementations for the `fewnomial` binary.
//!
//! Every command writes to caller-supplied sinks and returns its exit code,
//! so the binary is a thin wrapper and tests can drive commands in-process.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use fewnomial::rootcount::IsolatingInterval;
use fewnomial::sharpsearch::{
    self, CertifiedExample, DistributionTarget, ExponentTuple, SearchConfig,
};
use fewnomial::signvar::{v_interval, IntervalId};
use fewnomial::theorem::{self, BatchSummary, RootCountReport};
use fewnomial::{substitute_line, Fewnomial2, Line, ParseError, Rational, Transform};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFINITE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const SCHEMA: &str = "1";

/// Approximate roots of the reduced sharp trinomial as published, ascending.
pub const PUBLISHED_ROOTS: [&str; 9] = [
    "-3.96032", "-1.15048", "-0.61459", "-0.58528", "-0.03594", "0.18859", "0.22206", "0.25196",
    "0.44416",
];

pub const PUBLISHED_A: &str = "-0.002404";
pub const PUBLISHED_B: i64 = 29;
pub const PUBLISHED_EXPONENTS: (u32, u32, u32, u32) = (5, 2, 2, 17);

#[derive(Debug, Parser)]
#[command(
    name = "fewnomial",
    version,
    about = "Exact real intersections of lines with sparse plane curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the real intersections of a curve with a line.
    Count(CountArgs),
    /// Check the intersection bound on seeded random instances.
    Verify(VerifyArgs),
    /// Certify the eleven-point trinomial and compare with the published roots.
    Reproduce(ReproduceArgs),
    /// Search exponent tuples and coefficients for eleven-point trinomials.
    Search(SearchArgs),
    /// Apply one of the interval transforms to f(x, a x + b).
    Transform(TransformArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Polynomial in x and y, as text or JSON. Decimals are exact.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Line y = a x + b, written a,b.
    #[arg(long, default_value = "1,1", allow_hyphen_values = true)]
    pub line: String,
    /// Width of the isolating intervals used for printed roots.
    #[arg(long, default_value = "1e-5")]
    pub width: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Term counts: a value, a list 2,3,4 or a range 2..5.
    #[arg(long = "t", default_value = "3")]
    pub t: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-exp", default_value_t = 30)]
    pub max_exp: u32,
    #[arg(long = "coeff-bound", default_value_t = 50)]
    pub coeff_bound: u32,
    /// Worker threads (default: available processors).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "1e-5")]
    pub width: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Value or range lo..hi.
    #[arg(long, default_value = "1..15")]
    pub k2: String,
    #[arg(long, default_value = "1..15")]
    pub k3: String,
    #[arg(long, default_value = "0..6")]
    pub l2: String,
    #[arg(long = "l1-range", default_value = "2..19")]
    pub l1_range: String,
    /// Comma-separated rationals and geometric runs geom:start:ratio:count.
    #[arg(long = "b-grid", default_value = "geom:1/64:2:23,29")]
    pub b_grid: String,
    #[arg(long, default_value = "4,2,3")]
    pub target: String,
    #[arg(long, default_value = "1e-5")]
    pub width: String,
    /// Also search tuples rejected by the necessary exponent conditions.
    #[arg(long = "no-filter")]
    pub no_filter: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, default_value = "1,1", allow_hyphen_values = true)]
    pub line: String,
    /// h1, h2 or h3.
    #[arg(long)]
    pub which: String,
    #[arg(long)]
    pub json: bool,
}

// ---------------------------------------------------------------------------
// JSON documents

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub schema: String,
    pub poly: Fewnomial2,
    pub line: Line,
    pub report: RootCountReport,
    /// Isolating intervals of the real roots of f(x, a x + b).
    pub roots: Vec<IsolatingInterval>,
    pub root_width: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub schema: String,
    pub seed: u64,
    pub trials: u64,
    pub max_exponent: u32,
    pub coeff_bound: u32,
    pub batches: Vec<BatchSummary>,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootComparison {
    pub published: String,
    pub computed: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceOutput {
    pub schema: String,
    pub example: CertifiedExample,
    pub comparison: Vec<RootComparison>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLine {
    pub schema: String,
    #[serde(flatten)]
    pub example: CertifiedExample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformOutput {
    pub schema: String,
    pub input: fewnomial::DensePoly,
    pub which: Transform,
    pub output: fewnomial::DensePoly,
    /// Sign variations of the input on I1, I2, I3.
    pub variations: [usize; 3],
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

fn usage(err: &mut dyn Write, what: &str, e: &ParseError) -> i32 {
    let _ = writeln!(err, "error: {what}: {e}");
    EXIT_USAGE
}

fn usage_msg(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

/// `"v"` or `"lo..hi"` (inclusive; `lo..=hi` also accepted).
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, ParseError> {
    let num = |t: &str, col: usize| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| ParseError::new(col, format!("expected a nonnegative integer, got {t:?}")))
    };
    match s.split_once("..") {
        None => {
            let v = num(s, 1)?;
            Ok(v..=v)
        }
        Some((lo, hi)) => {
            let col = lo.chars().count() + 3;
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo, 1)?, num(hi, col)?);
            if lo > hi {
                return Err(ParseError::new(1, format!("empty range {s:?}")));
            }
            Ok(lo..=hi)
        }
    }
}

/// Comma-separated values and ranges, e.g. `2,3` or `2..5`.
pub fn parse_list(s: &str) -> Result<Vec<u32>, ParseError> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        let r = parse_range(part)
            .map_err(|e| ParseError::new(col + e.column.saturating_sub(1), e.message))?;
        out.extend(r);
        col += part.chars().count() + 1;
    }
    Ok(out)
}

/// Rationals and geometric runs `geom:start:ratio:count`, comma-separated.
pub fn parse_b_grid(s: &str) -> Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        let part_trim = part.trim();
        if let Some(rest) = part_trim.strip_prefix("geom:") {
            let fields: Vec<&str> = rest.split(':').collect();
            if fields.len() != 3 {
                return Err(ParseError::new(
                    col,
                    "geometric grid must be geom:start:ratio:count",
                ));
            }
            let start: Rational = fields[0]
                .parse()
                .map_err(|e: ParseError| ParseError::new(col, e.message))?;
            let ratio: Rational = fields[1]
                .parse()
                .map_err(|e: ParseError| ParseError::new(col, e.message))?;
            let count: usize = fields[2]
                .parse()
                .map_err(|_| ParseError::new(col, format!("bad count {:?}", fields[2])))?;
            out.extend(sharpsearch::geometric_grid(&start, &ratio, count));
        } else {
            let v: Rational = part_trim.parse().map_err(|e: ParseError| {
                ParseError::new(col + e.column.saturating_sub(1), e.message)
            })?;
            out.push(v);
        }
        col += part.chars().count() + 1;
    }
    Ok(out)
}

fn parse_width(s: &str) -> Result<Rational, ParseError> {
    let w: Rational = s.parse()?;
    if w.signum() <= 0 {
        return Err(ParseError::new(1, "width must be positive"));
    }
    Ok(w)
}

/// Decimal places that resolve `width`.
fn places_for(width: &Rational) -> usize {
    let mut places = 0;
    let mut step = Rational::one();
    while &step > width && places < 40 {
        step = &step / &Rational::from(10);
        places += 1;
    }
    places
}

fn build_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err("--jobs must be at least 1".into());
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable output")
}

// ---------------------------------------------------------------------------
// Commands

/// Parse `args` (including the program name) and run the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Count(a) => cmd_count(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Reproduce(a) => cmd_reproduce(&a, out, err),
        Command::Search(a) => cmd_search(&a, out, err),
        Command::Transform(a) => cmd_transform(&a, out, err),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_count(args: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let f = match Fewnomial2::parse_any(&args.poly) {
        Ok(f) => f,
        Err(e) => return usage(err, "--poly", &e),
    };
    let line: Line = match args.line.parse() {
        Ok(l) => l,
        Err(e) => return usage(err, "--line", &e),
    };
    let width = match parse_width(&args.width) {
        Ok(w) => w,
        Err(e) => return usage(err, "--width", &e),
    };
    if f.is_zero() {
        return usage_msg(
            err,
            "--poly: the zero polynomial has no finite intersection count",
        );
    }
    let report = theorem::intersection_count(&f, &line).expect("nonzero polynomial");
    let g = substitute_line(&f, &line);
    let mut roots = Vec::new();
    if !report.infinite {
        for iv in theorem::intersection_roots(&f, &line).expect("nonzero polynomial") {
            roots.push(fewnomial::rootcount::refine(&g, &iv, &width).expect("isolating interval"));
        }
    }
    let code = if report.infinite {
        EXIT_INFINITE
    } else {
        EXIT_OK
    };
    if args.json {
        let doc = CountOutput {
            schema: SCHEMA.into(),
            poly: f,
            line,
            report,
            roots,
            root_width: width,
        };
        let _ = writeln!(out, "{}", to_json(&doc));
        return code;
    }
    let _ = writeln!(out, "f = {f}");
    let _ = writeln!(out, "line: y = ({}) x + ({})", line.a, line.b);
    if report.infinite {
        let _ = writeln!(out, "f vanishes on the line: infinitely many intersections");
        return code;
    }
    let _ = writeln!(
        out,
        "degree of f(x, a x + b): {}",
        report.degree.unwrap_or(0)
    );
    if report.degenerate {
        let _ = writeln!(
            out,
            "roots with multiplicity: {} positive, {} negative",
            report.counts_i1, report.counts_i2
        );
        let _ = writeln!(
            out,
            "root at 0 (counted once): {}",
            yes_no(report.root_at_zero)
        );
        let _ = writeln!(
            out,
            "total: {} (bound 2t-1 = {}, t = {})",
            report.total, report.bound, report.t
        );
    } else {
        let _ = writeln!(
            out,
            "roots with multiplicity: I1 = ]0,+inf[: {}, I2 = ]-inf,-1[: {}, I3 = ]-1,0[: {} (unit-line coordinates)",
            report.counts_i1, report.counts_i2, report.counts_i3
        );
        let _ = writeln!(
            out,
            "root at 0 (counted once): {}",
            yes_no(report.root_at_zero)
        );
        let _ = writeln!(
            out,
            "root at -b/a (counted once): {}",
            yes_no(report.root_at_special)
        );
        let _ = writeln!(
            out,
            "total: {} (bound 6t-7 = {}, t = {})",
            report.total, report.bound, report.t
        );
    }
    let _ = writeln!(out, "within bound: {}", yes_no(report.within_bound));
    let places = places_for(&width);
    let _ = writeln!(
        out,
        "real roots (approximate midpoints of certified isolating intervals, width <= {width}):"
    );
    for r in &roots {
        let _ = writeln!(
            out,
            "  {}  multiplicity {}",
            r.midpoint().to_decimal_string(places),
            r.multiplicity
        );
    }
    code
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ts = match parse_list(&args.t) {
        Ok(v) if !v.is_empty() && v.iter().all(|&t| t >= 1) => v,
        Ok(_) => return usage_msg(err, "--t: term counts must be positive"),
        Err(e) => return usage(err, "--t", &e),
    };
    if args.trials == 0 {
        return usage_msg(err, "--trials must be at least 1");
    }
    if args.max_exp == 0 || args.coeff_bound == 0 {
        return usage_msg(err, "--max-exp and --coeff-bound must be positive");
    }
    let pool = match build_pool(args.jobs) {
        Ok(p) => p,
        Err(e) => return usage_msg(err, e),
    };
    let batches: Vec<BatchSummary> = pool.install(|| {
        ts.iter()
            .map(|&t| {
                theorem::verify_batch(
                    t as usize,
                    args.trials,
                    args.max_exp,
                    args.coeff_bound,
                    args.seed,
                )
            })
            .collect()
    });
    let violations: u64 = batches.iter().map(|b| b.violations.len() as u64).sum();
    let code = if violations > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    if args.json {
        let doc = VerifyOutput {
            schema: SCHEMA.into(),
            seed: args.seed,
            trials: args.trials,
            max_exponent: args.max_exp,
            coeff_bound: args.coeff_bound,
            batches,
            violations,
        };
        let _ = writeln!(out, "{}", to_json(&doc));
        return code;
    }
    let _ = writeln!(
        out,
        "seed {}, {} trials per t, exponents <= {}, coefficients in [-{}, {}]",
        args.seed, args.trials, args.max_exp, args.coeff_bound, args.coeff_bound
    );
    for b in &batches {
        let bound = theorem::bound_for(b.t, false);
        let _ = writeln!(
            out,
            "t = {}: bound {}, max total {}, degenerate lines {}, infinite {}, violations {}",
            b.t,
            bound,
            b.max_total,
            b.degenerate,
            b.infinite,
            b.violations.len()
        );
        let hist: Vec<String> = b
            .histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let _ = writeln!(out, "  totals {}", hist.join(" "));
        for v in b.violations.iter().take(5) {
            let _ = writeln!(
                out,
                "  violation: trial {}, f = {}, line {}, total {} > {}",
                v.trial, v.poly, v.line, v.report.total, v.report.bound
            );
        }
    }
    let _ = writeln!(out, "violations: {violations}");
    code
}

/// Certify the published example and compare its roots with the published
/// values. Shared by the command and the tests.
pub fn reproduce(width: &Rational) -> ReproduceOutput {
    let a: Rational = PUBLISHED_A.parse().expect("valid constant");
    let b = Rational::from(PUBLISHED_B);
    let (k2, k3, l2, l1) = PUBLISHED_EXPONENTS;
    let e = ExponentTuple::new(k2, k3, l2, l1).expect("valid tuple");
    let example = sharpsearch::certify_with(&a, &b, &e, &DistributionTarget::canonical(), width)
        .expect("published example is well formed");
    let tol = Rational::new(1, 10_000);
    let comparison: Vec<RootComparison> = PUBLISHED_ROOTS
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let published: Rational = p.parse().expect("valid constant");
            let computed = example
                .roots
                .get(i)
                .map(|r| r.midpoint())
                .unwrap_or_default();
            let matches = example.roots.len() == PUBLISHED_ROOTS.len()
                && (&computed - &published).abs() <= tol;
            RootComparison {
                published: p.to_string(),
                computed,
                matches,
            }
        })
        .collect();
    let ok = example.within_target
        && example.reduced_counts == [4, 2, 3]
        && example.report.total == 11
        && comparison.iter().all(|c| c.matches);
    ReproduceOutput {
        schema: SCHEMA.into(),
        example,
        comparison,
        ok,
    }
}

pub fn cmd_reproduce(args: &ReproduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let width = match parse_width(&args.width) {
        Ok(w) => w,
        Err(e) => return usage(err, "--width", &e),
    };
    let doc = reproduce(&width);
    let code = if doc.ok { EXIT_OK } else { EXIT_FAILURE };
    if args.json {
        let _ = writeln!(out, "{}", to_json(&doc));
        return code;
    }
    let ex = &doc.example;
    let _ = writeln!(
        out,
        "reduced trinomial: ({}) (x+1)^{} + {} x^{} (x+1)^{} + x^{}",
        ex.a, ex.exponents.l1, ex.b, ex.exponents.k2, ex.exponents.l2, ex.exponents.k3
    );
    let [n1, n2, n3] = ex.reduced_counts;
    let _ = writeln!(
        out,
        "roots: {n1} in I1, {n2} in I2, {n3} in I3; all simple: {}",
        yes_no(ex.all_simple)
    );
    let _ = writeln!(
        out,
        "approximate roots (midpoints of certified isolating intervals, width <= {width}):"
    );
    for id in IntervalId::ALL {
        let vals: Vec<String> = ex
            .roots_in(id)
            .iter()
            .map(|r| r.midpoint().to_decimal_string(5))
            .collect();
        let _ = writeln!(out, "  {id}: {}", vals.join(", "));
    }
    let f = sharpsearch::full_trinomial(&ex.a, &ex.b, &ex.exponents);
    let _ = writeln!(out, "full trinomial: {f}");
    let _ = writeln!(
        out,
        "intersections with y = x + 1: {} (root at 0: {}, root at -1: {}; bound {})",
        ex.report.total,
        yes_no(ex.report.root_at_zero),
        yes_no(ex.report.root_at_special),
        ex.report.bound
    );
    let mismatches: Vec<&RootComparison> = doc.comparison.iter().filter(|c| !c.matches).collect();
    if mismatches.is_empty() {
        let _ = writeln!(out, "published roots: all nine match within 1e-4");
    } else {
        let _ = writeln!(out, "published roots: {} mismatch(es)", mismatches.len());
        for c in mismatches {
            let _ = writeln!(
                out,
                "  published {} vs computed {}",
                c.published,
                c.computed.to_decimal_string(6)
            );
        }
    }
    let _ = writeln!(
        out,
        "{}",
        if doc.ok {
            "certified: eleven real intersection points"
        } else {
            "NOT certified"
        }
    );
    code
}

pub fn cmd_search(args: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let range =
        |s: &str, name: &str, err: &mut dyn Write| parse_range(s).map_err(|e| usage(err, name, &e));
    let k2 = match range(&args.k2, "--k2", err) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let k3 = match range(&args.k3, "--k3", err) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let l2 = match range(&args.l2, "--l2", err) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let l1 = match range(&args.l1_range, "--l1-range", err) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let b_grid = match parse_b_grid(&args.b_grid) {
        Ok(g) => g,
        Err(e) => return usage(err, "--b-grid", &e),
    };
    let target: DistributionTarget = match args.target.parse() {
        Ok(t) => t,
        Err(e) => return usage(err, "--target", &e),
    };
    let width = match parse_width(&args.width) {
        Ok(w) => w,
        Err(e) => return usage(err, "--width", &e),
    };
    let config = SearchConfig {
        k2,
        k3,
        l2,
        l1,
        b_grid,
        target,
        apply_filter: !args.no_filter,
        width,
    };
    let pool = match build_pool(args.jobs) {
        Ok(p) => p,
        Err(e) => return usage_msg(err, e),
    };
    // The search runs on its own thread so examples can be written here as
    // they arrive without `out` having to cross threads.
    let (tx, rx) = std::sync::mpsc::channel();
    let result = std::thread::scope(|s| {
        let worker = s.spawn(move || {
            pool.install(|| {
                sharpsearch::search_streaming(&config, |ex| {
                    let _ = tx.send(ex);
                })
            })
        });
        for ex in rx.iter() {
            if args.json {
                let line = SearchLine {
                    schema: SCHEMA.into(),
                    example: ex,
                };
                let _ = writeln!(out, "{}", to_json(&line));
            } else {
                let [n1, n2, n3] = ex.reduced_counts;
                let _ = writeln!(
                    out,
                    "{} b={} a={} counts {n1}/{n2}/{n3} total {}",
                    ex.exponents, ex.b, ex.a, ex.report.total
                );
            }
            let _ = out.flush();
        }
        worker.join().expect("search thread panicked")
    });
    match result {
        Ok(_) => EXIT_OK,
        Err(e) => usage_msg(err, e),
    }
}

pub fn cmd_transform(args: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let f = match Fewnomial2::parse_any(&args.poly) {
        Ok(f) => f,
        Err(e) => return usage(err, "--poly", &e),
    };
    let line: Line = match args.line.parse() {
        Ok(l) => l,
        Err(e) => return usage(err, "--line", &e),
    };
    let which: Transform = match args.which.parse() {
        Ok(w) => w,
        Err(e) => return usage(err, "--which", &e),
    };
    let g = substitute_line(&f, &line);
    if g.is_zero() {
        return usage_msg(
            err,
            "f(x, a x + b) is the zero polynomial; transforms need a nonzero input",
        );
    }
    let h = g.transform(which).expect("nonzero input");
    let variations = IntervalId::ALL.map(|id| v_interval(&g, id).expect("nonzero input"));
    if args.json {
        let doc = TransformOutput {
            schema: SCHEMA.into(),
            input: g,
            which,
            output: h,
            variations,
        };
        let _ = writeln!(out, "{}", to_json(&doc));
        return EXIT_OK;
    }
    let _ = writeln!(out, "g = {g}");
    let _ = writeln!(out, "{which}(g) = {h}");
    let _ = writeln!(
        out,
        "sign variations of g: I1 {}, I2 {}, I3 {}",
        variations[0], variations[1], variations[2]
    );
    EXIT_OK
}
