//! Counting the real intersections of a fewnomial curve with a line, and
//! checking the count against the `6t - 7` bound.
//!
//! For a line `y = a x + b` with `ab != 0` the substitution
//! `x -> b x / a` turns `f(x, a x + b)` into `f̂(x, x + 1)`, mapping the
//! special root `-b/a` to `-1`. Roots at `0` and `-1` are counted once; the
//! remaining roots are counted with multiplicity per interval.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fewnomial::{substitute_line, Fewnomial2, Line, Term};
use crate::rational::Rational;
use crate::rootcount::{self, Bound, IsolatingInterval};
use crate::signvar::IntervalId;
use crate::zpoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCountReport {
    pub t: usize,
    pub bound: i64,
    pub counts_i1: usize,
    pub counts_i2: usize,
    pub counts_i3: usize,
    pub root_at_zero: bool,
    /// Root at `-b/a` (at `-1` on the unit line). Always false for
    /// degenerate lines.
    pub root_at_special: bool,
    pub total: usize,
    pub infinite: bool,
    pub within_bound: bool,
    /// `a = 0` or `b = 0`; then `counts_i1`/`counts_i2` hold the positive
    /// and negative roots and `counts_i3` is zero.
    pub degenerate: bool,
    /// Degree of `f(x, a x + b)`; `None` when it vanishes identically.
    pub degree: Option<usize>,
}

impl RootCountReport {
    pub fn interval_total(&self) -> usize {
        self.counts_i1 + self.counts_i2 + self.counts_i3
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.counts_i1, self.counts_i2, self.counts_i3]
    }

    fn infinite(t: usize, bound: i64, degenerate: bool) -> Self {
        RootCountReport {
            t,
            bound,
            counts_i1: 0,
            counts_i2: 0,
            counts_i3: 0,
            root_at_zero: false,
            root_at_special: false,
            total: 0,
            infinite: true,
            within_bound: true,
            degenerate,
            degree: None,
        }
    }
}

/// Bound for `t` terms: `2t - 1` on degenerate lines, otherwise `6t - 7`
/// clamped at zero.
pub fn bound_for(t: usize, degenerate: bool) -> i64 {
    let t = t as i64;
    if degenerate {
        2 * t - 1
    } else {
        (6 * t - 7).max(0)
    }
}

/// `f̂` with `f(b x / a, b (x + 1)) = f̂(x, x + 1)`.
pub fn reduce_to_unit_line(f: &Fewnomial2, line: &Line) -> Result<Fewnomial2> {
    if line.is_degenerate() {
        return Err(Error::DegenerateLine);
    }
    let terms = f.terms().iter().map(|t| {
        let c = &t.c * &line.a.pow(-(t.bx as i32)) * line.b.pow((t.bx + t.by) as i32);
        Term::new(c, t.bx, t.by)
    });
    Fewnomial2::from_terms(terms.collect())
}

pub fn intersection_count(f: &Fewnomial2, line: &Line) -> Result<RootCountReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if line.is_degenerate() {
        return Ok(degenerate_count(f, line));
    }
    let fhat = reduce_to_unit_line(f, line)?;
    Ok(unit_line_count(&fhat))
}

fn degenerate_count(f: &Fewnomial2, line: &Line) -> RootCountReport {
    let t = f.term_count();
    let bound = bound_for(t, true);
    let g = substitute_line(f, line);
    let Some((_, z)) = g.to_zpoly() else {
        return RootCountReport::infinite(t, bound, true);
    };
    let degree = zpoly::degree(&z);
    let (z, at_zero) = zpoly::strip_root(z, &BigInt::zero(), &BigInt::one());
    // Positive roots of z(x) and of z(-x).
    let pos = rootcount::count_in_z(&z, IntervalId::I1);
    let neg = rootcount::count_in_z(&zpoly::negate_odd(&z), IntervalId::I1);
    let total = pos + neg + usize::from(at_zero > 0);
    RootCountReport {
        t,
        bound,
        counts_i1: pos,
        counts_i2: neg,
        counts_i3: 0,
        root_at_zero: at_zero > 0,
        root_at_special: false,
        total,
        infinite: false,
        within_bound: total as i64 <= bound,
        degenerate: true,
        degree,
    }
}

fn unit_line_count(fhat: &Fewnomial2) -> RootCountReport {
    let t = fhat.term_count();
    let bound = bound_for(t, false);
    let g = substitute_line(fhat, &Line::unit());
    let Some((_, z)) = g.to_zpoly() else {
        return RootCountReport::infinite(t, bound, false);
    };
    let degree = zpoly::degree(&z);
    let (z, at_zero) = zpoly::strip_root(z, &BigInt::zero(), &BigInt::one());
    let (z, at_special) = zpoly::strip_root(z, &BigInt::from(-1), &BigInt::one());
    let [c1, c2, c3] = IntervalId::ALL.map(|id| rootcount::count_in_z(&z, id));
    let interval_total = c1 + c2 + c3;
    let total = interval_total + usize::from(at_zero > 0) + usize::from(at_special > 0);
    // With a single term the only roots are 0 and -1; the clamped bound
    // applies to the interval roots alone.
    let within_bound = if t == 1 {
        interval_total as i64 <= bound
    } else {
        total as i64 <= bound
    };
    RootCountReport {
        t,
        bound,
        counts_i1: c1,
        counts_i2: c2,
        counts_i3: c3,
        root_at_zero: at_zero > 0,
        root_at_special: at_special > 0,
        total,
        infinite: false,
        within_bound,
        degenerate: false,
        degree,
    }
}

pub fn verify_bound(f: &Fewnomial2, line: &Line) -> Result<bool> {
    let r = intersection_count(f, line)?;
    Ok(r.infinite || r.within_bound)
}

/// Isolating intervals for every real root of `f(x, a x + b)`, in the
/// original coordinate `x`. Empty when the substitution vanishes.
pub fn intersection_roots(f: &Fewnomial2, line: &Line) -> Result<Vec<IsolatingInterval>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = substitute_line(f, line);
    if g.is_zero() {
        return Ok(Vec::new());
    }
    rootcount::isolate_roots(&g, &Bound::NegInf, &Bound::PosInf)
}

// ---------------------------------------------------------------------------
// Random instances

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub t: usize,
    pub max_exponent: u32,
    pub coeff_bound: u32,
    pub seed: u64,
}

fn nonzero_in(rng: &mut ChaCha8Rng, bound: u32) -> i64 {
    let b = i64::from(bound.max(1));
    loop {
        let v = rng.gen_range(-b..=b);
        if v != 0 {
            return v;
        }
    }
}

/// Seed-deterministic instance: `t` distinct exponent pairs drawn uniformly
/// from `[0, max_exponent]^2`, nonzero integer coefficients in
/// `[-coeff_bound, coeff_bound]`. One line in ten has `a = 0`, one in ten
/// `b = 0`, the rest have both coefficients nonzero.
pub fn random_instance(params: &InstanceParams) -> (Fewnomial2, Line) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let side = u64::from(params.max_exponent) + 1;
    let t = params.t.min((side * side) as usize);
    let mut seen = std::collections::HashSet::new();
    let mut terms = Vec::with_capacity(t);
    while terms.len() < t {
        let bx = rng.gen_range(0..=params.max_exponent);
        let by = rng.gen_range(0..=params.max_exponent);
        if seen.insert((bx, by)) {
            let c = Rational::from(nonzero_in(&mut rng, params.coeff_bound));
            terms.push(Term::new(c, bx, by));
        }
    }
    let f = Fewnomial2::from_terms(terms).expect("distinct nonzero terms");
    let kind = rng.gen_range(0..10);
    let a = if kind == 0 {
        0
    } else {
        nonzero_in(&mut rng, params.coeff_bound)
    };
    let b = if kind == 1 {
        0
    } else {
        nonzero_in(&mut rng, params.coeff_bound)
    };
    (f, Line::new(a.into(), b.into()))
}

/// SplitMix64 finalizer; derives independent per-trial seeds.
pub fn mix_seed(seed: u64, t: usize, trial: u64) -> u64 {
    let mut z = seed
        .wrapping_add((t as u64).wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub poly: Fewnomial2,
    pub line: Line,
    pub report: RootCountReport,
}

/// Outcome of a batch of random instances with a fixed term count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub t: usize,
    pub trials: u64,
    pub seed: u64,
    /// Total intersection count -> number of finite instances.
    pub histogram: BTreeMap<usize, u64>,
    pub max_total: usize,
    pub degenerate: u64,
    pub infinite: u64,
    pub violations: Vec<Violation>,
}

/// Run `trials` random instances with `t` terms. Work is spread over the
/// current rayon pool; the result depends only on the arguments.
pub fn verify_batch(
    t: usize,
    trials: u64,
    max_exponent: u32,
    coeff_bound: u32,
    seed: u64,
) -> BatchSummary {
    let reports: Vec<(u64, Fewnomial2, Line, RootCountReport)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let params = InstanceParams {
                t,
                max_exponent,
                coeff_bound,
                seed: mix_seed(seed, t, trial),
            };
            let (f, line) = random_instance(&params);
            let report = intersection_count(&f, &line).expect("random instances are nonzero");
            (trial, f, line, report)
        })
        .collect();
    let mut summary = BatchSummary {
        t,
        trials,
        seed,
        histogram: BTreeMap::new(),
        max_total: 0,
        degenerate: 0,
        infinite: 0,
        violations: Vec::new(),
    };
    for (trial, f, line, report) in reports {
        if report.degenerate {
            summary.degenerate += 1;
        }
        if report.infinite {
            summary.infinite += 1;
            continue;
        }
        *summary.histogram.entry(report.total).or_default() += 1;
        summary.max_total = summary.max_total.max(report.total);
        if !report.within_bound {
            log::warn!("bound violated: trial {trial}, f = {f}, line {line}");
            summary.violations.push(Violation {
                trial,
                poly: f,
                line,
                report,
            });
        }
    }
    summary
}
