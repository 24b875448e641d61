//! Search for trinomials whose restriction to `y = x + 1` has nine real
//! roots away from `0` and `-1` (eleven with those two), in the reduced form
//!
//! ```text
//! P(x) = a (x+1)^l1 + b x^k2 (x+1)^l2 + x^k3.
//! ```
//!
//! Off `{0, -1}`, `P = 0` is the level set `f(x) = -a` of
//! `f(x) = (b x^k2 (x+1)^l2 + x^k3) / (x+1)^l1`. The critical points of `f`
//! are the roots of an explicit polynomial, so root distributions of `P` per
//! interval can be read off the critical values, and every candidate `a` is
//! then certified with exact root counting.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::fewnomial::{Fewnomial2, Line, Term};
use crate::interval::RatInterval;
use crate::poly::DensePoly;
use crate::rational::Rational;
use crate::rootcount::{self, interval_bounds, IsolatingInterval};
use crate::signvar::IntervalId;
use crate::theorem::{intersection_count, RootCountReport};

/// Exponents of the reduced trinomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub k2: u32,
    pub k3: u32,
    pub l2: u32,
    pub l1: u32,
}

impl ExponentTuple {
    /// Validated constructor: `k2, k3 > 0`, `l1 > k2 + l2`, `l1 > k3`.
    pub fn new(k2: u32, k3: u32, l2: u32, l1: u32) -> Result<Self> {
        let e = ExponentTuple { k2, k3, l2, l1 };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k2 == 0 || self.k3 == 0 {
            return Err(Error::InvalidExponents(format!(
                "{self}: k2 and k3 must be positive"
            )));
        }
        if self.l1 <= self.k2 + self.l2 {
            return Err(Error::InvalidExponents(format!(
                "{self}: need l1 > k2 + l2"
            )));
        }
        if self.l1 <= self.k3 {
            return Err(Error::InvalidExponents(format!("{self}: need l1 > k3")));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// All valid tuples with the given ranges, in `(k2, k3, l2, l1)` order.
    pub fn enumerate(
        k2: RangeInclusive<u32>,
        k3: RangeInclusive<u32>,
        l2: RangeInclusive<u32>,
        l1: RangeInclusive<u32>,
    ) -> Vec<ExponentTuple> {
        let mut out = Vec::new();
        for a in k2 {
            for b in k3.clone() {
                for c in l2.clone() {
                    for d in l1.clone() {
                        let e = ExponentTuple {
                            k2: a,
                            k3: b,
                            l2: c,
                            l1: d,
                        };
                        if e.is_valid() {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.k2, self.k3, self.l2, self.l1)
    }
}

impl FromStr for ExponentTuple {
    type Err = ParseError;
    /// `"k2,k3,l2,l1"`, optionally parenthesized.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let v = parse_list(s.trim().trim_start_matches('(').trim_end_matches(')'), 4)?;
        Ok(ExponentTuple {
            k2: v[0],
            k3: v[1],
            l2: v[2],
            l1: v[3],
        })
    }
}

fn parse_list(s: &str, n: usize) -> std::result::Result<Vec<u32>, ParseError> {
    let mut out = Vec::with_capacity(n);
    let mut col = 1;
    for part in s.split(',') {
        let v = part.trim().parse::<u32>().map_err(|_| {
            ParseError::new(col, format!("expected a nonnegative integer, got {part:?}"))
        })?;
        out.push(v);
        col += part.chars().count() + 1;
    }
    if out.len() != n {
        return Err(ParseError::new(
            1,
            format!("expected {n} comma-separated values"),
        ));
    }
    Ok(out)
}

/// Desired root counts in `I1`, `I2`, `I3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistributionTarget {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl DistributionTarget {
    pub fn new(n1: usize, n2: usize, n3: usize) -> Self {
        DistributionTarget { n1, n2, n3 }
    }

    /// Four roots in `I1`, two in `I2`, three in `I3`.
    pub fn canonical() -> Self {
        DistributionTarget::new(4, 2, 3)
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2 + self.n3
    }
}

impl Default for DistributionTarget {
    fn default() -> Self {
        DistributionTarget::canonical()
    }
}

impl fmt::Display for DistributionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n1, self.n2, self.n3)
    }
}

impl FromStr for DistributionTarget {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let v = parse_list(s, 3)?;
        Ok(DistributionTarget::new(
            v[0] as usize,
            v[1] as usize,
            v[2] as usize,
        ))
    }
}

/// `a (x+1)^l1 + b x^k2 (x+1)^l2 + x^k3`.
pub fn reduced_trinomial(a: &Rational, b: &Rational, e: &ExponentTuple) -> Result<DensePoly> {
    e.validate()?;
    let first = DensePoly::binomial_power(e.l1 as usize).scale(a);
    let second = DensePoly::binomial_power(e.l2 as usize)
        .shift_up(e.k2 as usize)
        .scale(b);
    let third = DensePoly::monomial(Rational::one(), e.k3 as usize);
    Ok(&(&first + &second) + &third)
}

// ---------------------------------------------------------------------------
// Necessary conditions on the exponents

/// The necessary condition an exponent tuple failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NecessaryCondition {
    /// Four positive roots force `k2, k3 > 0`, `l1 > k2 + l2`, `l1 > k3`.
    Support,
    /// Four roots in `I1` and three in `I2` or `I3` force `k3` outside
    /// `[k2, k2 + l2]`.
    NewtonInterval,
    /// With `k3 < k2`, the counts 4/2/3 force `l1, k2` odd and `k3, l2` even.
    Parity,
}

impl fmt::Display for NecessaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NecessaryCondition::Support => "support",
            NecessaryCondition::NewtonInterval => "newton-interval",
            NecessaryCondition::Parity => "parity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FilterOutcome {
    Pass,
    Fail {
        condition: NecessaryCondition,
        reason: String,
    },
}

impl FilterOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, FilterOutcome::Pass)
    }

    fn fail(condition: NecessaryCondition, reason: String) -> Self {
        FilterOutcome::Fail { condition, reason }
    }
}

/// Check the necessary conditions for the target distribution. Conditions
/// are tried in order support, Newton interval, parity; the first failure
/// is reported. Only the 4/2/3 target is supported.
pub fn filter_exponents(e: &ExponentTuple, target: &DistributionTarget) -> Result<FilterOutcome> {
    if *target != DistributionTarget::canonical() {
        return Err(Error::Unsupported(format!(
            "exponent filter is only available for the 4,2,3 distribution, not {target}"
        )));
    }
    let ExponentTuple { k2, k3, l2, l1 } = *e;
    if k2 == 0 || k3 == 0 {
        return Ok(FilterOutcome::fail(
            NecessaryCondition::Support,
            "k2 and k3 must be positive".into(),
        ));
    }
    if l1 <= k2 + l2 {
        return Ok(FilterOutcome::fail(
            NecessaryCondition::Support,
            format!("l1 = {l1} <= k2 + l2 = {}", k2 + l2),
        ));
    }
    if l1 <= k3 {
        return Ok(FilterOutcome::fail(
            NecessaryCondition::Support,
            format!("l1 = {l1} <= k3 = {k3}"),
        ));
    }
    if k2 <= k3 && k3 <= k2 + l2 {
        return Ok(FilterOutcome::fail(
            NecessaryCondition::NewtonInterval,
            format!("k3 = {k3} lies in [{k2}, {}]", k2 + l2),
        ));
    }
    if k3 < k2 {
        let checks = [
            (l1 % 2 == 1, format!("l1 = {l1} is even")),
            (k2 % 2 == 1, format!("k2 = {k2} is even")),
            (k3 % 2 == 0, format!("k3 = {k3} is odd")),
            (l2 % 2 == 0, format!("l2 = {l2} is odd")),
        ];
        if let Some((_, reason)) = checks.into_iter().find(|(ok, _)| !ok) {
            return Ok(FilterOutcome::fail(NecessaryCondition::Parity, reason));
        }
    }
    Ok(FilterOutcome::Pass)
}

// ---------------------------------------------------------------------------
// Critical points

/// The rational map `Φ = numerator / denominator` whose level set `Φ = 1`
/// holds the critical points of `f`, for `k3 < k2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiData {
    pub rho1: Rational,
    pub rho2: Rational,
    pub a1: DensePoly,
    pub a2: DensePoly,
    pub numerator: DensePoly,
    pub denominator: DensePoly,
}

fn linear_factors(e: &ExponentTuple) -> (DensePoly, DensePoly) {
    let (k2, k3, l2, l1) = (e.k2 as i64, e.k3 as i64, e.l2 as i64, e.l1 as i64);
    (
        DensePoly::from_i64(&[k2, k2 + l2 - l1]),
        DensePoly::from_i64(&[k3, k3 - l1]),
    )
}

pub fn derive_phi(b: &Rational, e: &ExponentTuple) -> Result<PhiData> {
    e.validate()?;
    if e.k3 >= e.k2 {
        return Err(Error::Unsupported(format!(
            "{e}: the rational map is only derived for k3 < k2"
        )));
    }
    if b.is_zero() {
        return Err(Error::InvalidExponents("b must be nonzero".into()));
    }
    let (a1, a2) = linear_factors(e);
    let rho1 = Rational::new(e.k2, e.l1 - e.k2 - e.l2);
    let rho2 = Rational::new(e.k3, e.l1 - e.k3);
    let numerator = (&DensePoly::binomial_power(e.l2 as usize).shift_up((e.k2 - e.k3) as usize)
        * &a1)
        .scale(&-b);
    Ok(PhiData {
        rho1,
        rho2,
        a1,
        denominator: a2.clone(),
        a2,
        numerator,
    })
}

/// Polynomial whose roots off `{0, -1}` are exactly the critical points of
/// `f`: `b x^(k2-m) (1+x)^l2 A1 + x^(k3-m) A2` with `m = min(k2, k3)`.
/// For `k3 < k2` this is `denominator - numerator` of `Φ`.
pub fn critical_polynomial(b: &Rational, e: &ExponentTuple) -> Result<DensePoly> {
    e.validate()?;
    let (a1, a2) = linear_factors(e);
    let m = e.k2.min(e.k3);
    let first =
        (&DensePoly::binomial_power(e.l2 as usize).shift_up((e.k2 - m) as usize) * &a1).scale(b);
    Ok(&first + &a2.shift_up((e.k3 - m) as usize))
}

/// Isolated critical points of `f`, tagged by the interval containing them.
pub fn critical_structure(
    b: &Rational,
    e: &ExponentTuple,
) -> Result<Vec<(IsolatingInterval, IntervalId)>> {
    let c = critical_polynomial(b, e)?;
    let mut out = Vec::new();
    for id in IntervalId::ALL {
        let (lo, hi) = interval_bounds(id);
        for iv in rootcount::isolate_roots(&c, &lo, &hi)? {
            out.push((iv, id));
        }
    }
    Ok(out)
}

/// Number of distinct critical points of `f` per interval.
pub fn critical_pattern(b: &Rational, e: &ExponentTuple) -> Result<[usize; 3]> {
    let c = critical_polynomial(b, e)?;
    let mut out = [0; 3];
    for id in IntervalId::ALL {
        let (lo, hi) = interval_bounds(id);
        out[id.index()] = rootcount::count_distinct(&c, &lo, &hi)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Level search

/// `N(x) = b x^k2 (1+x)^l2 + x^k3`, so that `f = N / (1+x)^l1`.
fn level_numerator(b: &Rational, e: &ExponentTuple) -> DensePoly {
    let first = DensePoly::binomial_power(e.l2 as usize)
        .shift_up(e.k2 as usize)
        .scale(b);
    &first + &DensePoly::monomial(Rational::one(), e.k3 as usize)
}

/// Enclosure of `f` over `x`, which must avoid `-1`.
fn enclose_f(numer: &DensePoly, l1: u32, x: &RatInterval) -> Option<RatInterval> {
    let shifted = x.add(&RatInterval::point(Rational::one()));
    x.eval(numer).div(&shifted.powi(l1))
}

/// A value of `f` along one interval: a one-sided limit or an enclosed
/// critical value.
#[derive(Debug, Clone)]
enum Level {
    Zero,
    NegInf,
    PosInf,
    Critical(usize),
}

/// Sign of `f` near `-1` from the left and from the right.
fn pole_signs(numer: &DensePoly, l1: u32) -> (i32, i32) {
    let mut n = numer.clone();
    let mut m = 0u32;
    let minus_one = Rational::from(-1);
    let divisor = DensePoly::from_i64(&[1, 1]);
    while !n.is_zero() && n.eval(&minus_one).is_zero() {
        n = n.div_rem(&divisor).expect("nonzero divisor").0;
        m += 1;
    }
    let s = n.eval(&minus_one).signum();
    let left = if (l1 - m) % 2 == 1 { -s } else { s };
    (left, s)
}

const MAX_WIDTH_EXPONENT: i32 = 12;

/// Candidate values of `a` whose level `-a` should cut `f` in the target
/// number of points per interval.
///
/// Critical values are enclosed by exact interval arithmetic and refined
/// until they separate from each other and from `0`; one simple decimal is
/// proposed per gap whose crossing counts match. Candidates still need
/// [`certify_example`].
pub fn search_level(
    b: &Rational,
    e: &ExponentTuple,
    target: &DistributionTarget,
) -> Result<Vec<Rational>> {
    e.validate()?;
    // Descartes: a trinomial has at most 4 roots in each interval.
    if target.as_array().iter().any(|&n| n > 4) {
        return Ok(Vec::new());
    }
    let crit = critical_structure(b, e)?;
    let mut per_interval = [0usize; 3];
    for (_, id) in &crit {
        per_interval[id.index()] += 1;
    }
    // Rolle: n crossings on an interval need n - 1 critical points inside.
    if (0..3).any(|j| target.as_array()[j] > per_interval[j] + 1) {
        return Ok(Vec::new());
    }
    let numer = level_numerator(b, e);
    let c = critical_polynomial(b, e)?;

    let cap = Rational::new(1, 10i64.pow(MAX_WIDTH_EXPONENT as u32));
    let mut points: Vec<IsolatingInterval> = crit.iter().map(|(iv, _)| iv.clone()).collect();
    let mut width = Rational::new(1, 1_000_000);
    let mut refine_all = true;
    let mut dirty = vec![true; points.len()];
    let mut values: Vec<RatInterval> = vec![RatInterval::point(Rational::zero()); points.len()];
    loop {
        for (i, iv) in points.iter_mut().enumerate() {
            if !(dirty[i] || refine_all) {
                continue;
            }
            *iv = rootcount::refine(&c, iv, &width)?;
            let x = RatInterval::new(iv.lo.clone(), iv.hi.clone());
            values[i] = enclose_f(&numer, e.l1, &x).ok_or_else(|| {
                Error::RefinementCap(format!("critical point interval of {e} touches -1"))
            })?;
        }
        refine_all = false;
        // Overlaps among critical values and with the limit value 0.
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| values[i].lo.cmp(&values[j].lo));
        dirty = vec![false; points.len()];
        let mut clash = false;
        for w in order.windows(2) {
            if values[w[0]].overlaps(&values[w[1]])
                && !(points[w[0]].is_exact() && points[w[1]].is_exact())
            {
                dirty[w[0]] = true;
                dirty[w[1]] = true;
                clash = true;
            }
        }
        for i in 0..points.len() {
            if values[i].contains_zero() {
                dirty[i] = true;
                clash = true;
            }
        }
        if !clash {
            break;
        }
        if width < cap {
            return Err(Error::RefinementCap(format!(
                "critical values of f for b = {b}, {e} did not separate at width 1e-{MAX_WIDTH_EXPONENT}"
            )));
        }
        width = &width / &Rational::from(1000);
    }

    // Sequence of levels along each interval, left to right.
    let (pole_left, pole_right) = pole_signs(&numer, e.l1);
    let inf = |s: i32| if s > 0 { Level::PosInf } else { Level::NegInf };
    let mut seqs: [Vec<Level>; 3] = Default::default();
    for id in IntervalId::ALL {
        let seq = &mut seqs[id.index()];
        seq.push(match id {
            IntervalId::I1 | IntervalId::I2 => Level::Zero,
            IntervalId::I3 => inf(pole_right),
        });
        let mut idx: Vec<usize> = (0..points.len()).filter(|&i| crit[i].1 == id).collect();
        idx.sort_by(|&i, &j| points[i].lo.cmp(&points[j].lo));
        seq.extend(idx.into_iter().map(Level::Critical));
        seq.push(match id {
            IntervalId::I1 | IntervalId::I3 => Level::Zero,
            IntervalId::I2 => inf(pole_left),
        });
    }

    // Breakpoints: all enclosures and the point 0, now pairwise disjoint.
    let mut breaks: Vec<RatInterval> = values.clone();
    breaks.push(RatInterval::point(Rational::zero()));
    breaks.sort_by(|x, y| x.lo.cmp(&y.lo));
    breaks.dedup();
    let mut levels = Vec::with_capacity(breaks.len() + 1);
    levels.push(Rational::from_integer(-(-&breaks[0].lo).floor() - 1));
    for w in breaks.windows(2) {
        levels.push(Rational::simplest_decimal_between(&w[0].hi, &w[1].lo));
    }
    levels.push(Rational::from_integer(
        breaks.last().unwrap().hi.floor() + 1,
    ));

    let below = |lv: &Level, l: &Rational| -> bool {
        match lv {
            Level::Zero => l.signum() > 0,
            Level::NegInf => true,
            Level::PosInf => false,
            Level::Critical(i) => values[*i].hi < *l,
        }
    };
    let mut out = Vec::new();
    for l in levels {
        let counts: Vec<usize> = seqs
            .iter()
            .map(|seq| {
                seq.windows(2)
                    .filter(|w| below(&w[0], &l) != below(&w[1], &l))
                    .count()
            })
            .collect();
        if counts == target.as_array() {
            out.push(-l);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Certification

/// An exactly counted candidate; `within_target` says whether it is sharp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedExample {
    pub a: Rational,
    pub b: Rational,
    pub exponents: ExponentTuple,
    pub target: DistributionTarget,
    /// Roots of the reduced trinomial per interval, with multiplicity.
    pub reduced_counts: [usize; 3],
    pub all_simple: bool,
    pub within_target: bool,
    /// Report for the full trinomial on `y = x + 1`.
    pub report: RootCountReport,
    /// Roots of the reduced trinomial off `{0, -1}`, ascending.
    pub roots: Vec<IsolatingInterval>,
}

impl CertifiedExample {
    /// Roots lying in `id`.
    pub fn roots_in(&self, id: IntervalId) -> Vec<&IsolatingInterval> {
        let zero = Rational::zero();
        let minus_one = Rational::from(-1);
        self.roots
            .iter()
            .filter(|r| match id {
                IntervalId::I1 => r.lo >= zero,
                IntervalId::I2 => r.hi <= minus_one,
                IntervalId::I3 => r.lo >= minus_one && r.hi <= zero,
            })
            .collect()
    }
}

/// The trinomial `a x y^(l1+1) + b x^(k2+1) y^(l2+1) + x^(k3+1) y`, whose
/// restriction to `y = x + 1` is `x (x+1)` times the reduced form.
pub fn full_trinomial(a: &Rational, b: &Rational, e: &ExponentTuple) -> Fewnomial2 {
    Fewnomial2::collect([
        Term::new(a.clone(), 1, e.l1 + 1),
        Term::new(b.clone(), e.k2 + 1, e.l2 + 1),
        Term::new(Rational::one(), e.k3 + 1, 1),
    ])
}

pub fn default_root_width() -> Rational {
    Rational::new(1, 100_000)
}

/// Certify against the 4/2/3 target with roots refined to width `1e-5`.
pub fn certify_example(a: &Rational, b: &Rational, e: &ExponentTuple) -> Result<CertifiedExample> {
    certify_with(
        a,
        b,
        e,
        &DistributionTarget::canonical(),
        &default_root_width(),
    )
}

pub fn certify_with(
    a: &Rational,
    b: &Rational,
    e: &ExponentTuple,
    target: &DistributionTarget,
    width: &Rational,
) -> Result<CertifiedExample> {
    let p = reduced_trinomial(a, b, e)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut reduced_counts = [0usize; 3];
    let mut roots = Vec::new();
    for id in IntervalId::ALL {
        reduced_counts[id.index()] = rootcount::count_in(&p, id)?;
        let (lo, hi) = interval_bounds(id);
        for iv in rootcount::isolate_roots(&p, &lo, &hi)? {
            roots.push(rootcount::refine(&p, &iv, width)?);
        }
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    let all_simple = roots.iter().all(|r| r.multiplicity == 1);
    let report = intersection_count(&full_trinomial(a, b, e), &Line::unit())?;
    let within_target = reduced_counts == target.as_array()
        && all_simple
        && report.counts() == reduced_counts
        && report.root_at_zero
        && report.root_at_special
        && report.total == target.total() + 2;
    Ok(CertifiedExample {
        a: a.clone(),
        b: b.clone(),
        exponents: *e,
        target: *target,
        reduced_counts,
        all_simple,
        within_target,
        report,
        roots,
    })
}

// ---------------------------------------------------------------------------
// Grid search

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k2: RangeInclusive<u32>,
    pub k3: RangeInclusive<u32>,
    pub l2: RangeInclusive<u32>,
    pub l1: RangeInclusive<u32>,
    pub b_grid: Vec<Rational>,
    pub target: DistributionTarget,
    /// Skip tuples rejected by [`filter_exponents`].
    pub apply_filter: bool,
    pub width: Rational,
}

/// Geometric grid `start * ratio^i`, `i < count`.
pub fn geometric_grid(start: &Rational, ratio: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut v = start.clone();
    for _ in 0..count {
        out.push(v.clone());
        v = &v * ratio;
    }
    out
}

/// Every certified sharp example in the grid, ordered by exponent tuple,
/// then `b` in grid order, then `a` ascending. Runs on the current rayon
/// pool; the result does not depend on the pool size.
pub fn search(config: &SearchConfig) -> Result<Vec<CertifiedExample>> {
    let mut found = Vec::new();
    search_streaming(config, |ex| found.push(ex))?;
    Ok(found)
}

/// Like [`search`], but hands each example to `emit` as soon as its chunk of
/// the grid is done. Emission order matches [`search`]. Returns the number
/// of examples emitted.
pub fn search_streaming(
    config: &SearchConfig,
    mut emit: impl FnMut(CertifiedExample),
) -> Result<usize> {
    let mut tuples = ExponentTuple::enumerate(
        config.k2.clone(),
        config.k3.clone(),
        config.l2.clone(),
        config.l1.clone(),
    );
    if config.apply_filter {
        let mut kept = Vec::with_capacity(tuples.len());
        for e in tuples {
            if filter_exponents(&e, &config.target)?.passed() {
                kept.push(e);
            }
        }
        tuples = kept;
    }
    let jobs: Vec<(ExponentTuple, Rational)> = tuples
        .iter()
        .flat_map(|e| config.b_grid.iter().map(move |b| (*e, b.clone())))
        .collect();
    let chunk = (rayon::current_num_threads() * 8).max(1);
    let mut emitted = 0;
    for block in jobs.chunks(chunk) {
        let found: Vec<Vec<CertifiedExample>> = block
            .par_iter()
            .map(|(e, b)| search_one(e, b, config))
            .collect();
        for ex in found.into_iter().flatten() {
            emit(ex);
            emitted += 1;
        }
    }
    Ok(emitted)
}

fn search_one(e: &ExponentTuple, b: &Rational, config: &SearchConfig) -> Vec<CertifiedExample> {
    let candidates = match search_level(b, e, &config.target) {
        Ok(c) => c,
        Err(err) => {
            log::warn!("level search skipped for b = {b}, {e}: {err}");
            return Vec::new();
        }
    };
    let mut out: Vec<CertifiedExample> = Vec::new();
    for a in candidates {
        match certify_with(&a, b, e, &config.target, &config.width) {
            Ok(ex) if ex.within_target => out.push(ex),
            Ok(_) => log::debug!("candidate a = {a} for b = {b}, {e} did not certify"),
            Err(err) => log::warn!("certification failed for a = {a}, b = {b}, {e}: {err}"),
        }
    }
    out.sort_by(|x, y| x.a.cmp(&y.a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn published_tuple() -> ExponentTuple {
        ExponentTuple::new(5, 2, 2, 17).unwrap()
    }

    fn published_a() -> Rational {
        Rational::new(-601, 250_000)
    }

    fn b29() -> Rational {
        Rational::from(29)
    }

    #[test]
    fn tuple_validation_and_parsing() {
        assert!(ExponentTuple::new(5, 2, 2, 7).is_err());
        assert!(ExponentTuple::new(0, 2, 2, 17).is_err());
        assert!(ExponentTuple::new(5, 17, 2, 17).is_err());
        assert_eq!(
            "5,2,2,17".parse::<ExponentTuple>().unwrap(),
            published_tuple()
        );
        assert_eq!(
            "(5,2,2,17)".parse::<ExponentTuple>().unwrap(),
            published_tuple()
        );
        assert_eq!("5,2,x,17".parse::<ExponentTuple>().unwrap_err().column, 5);
        assert_eq!(published_tuple().to_string(), "(5,2,2,17)");
    }

    #[test]
    fn reduced_form_examples() {
        let p = reduced_trinomial(&published_a(), &b29(), &published_tuple()).unwrap();
        assert_eq!(p.degree(), Some(17));
        assert_eq!(p.eval(&Rational::zero()), published_a());
        let q = reduced_trinomial(&Rational::zero(), &b29(), &published_tuple()).unwrap();
        assert_eq!(q.degree(), Some(7));
    }

    #[test]
    fn filter_examples() {
        let t = DistributionTarget::canonical();
        assert_eq!(
            filter_exponents(&published_tuple(), &t).unwrap(),
            FilterOutcome::Pass
        );
        let cond = |e: ExponentTuple| match filter_exponents(&e, &t).unwrap() {
            FilterOutcome::Fail { condition, .. } => Some(condition),
            FilterOutcome::Pass => None,
        };
        assert_eq!(
            cond(ExponentTuple {
                k2: 5,
                k3: 2,
                l2: 2,
                l1: 16
            }),
            Some(NecessaryCondition::Parity)
        );
        assert_eq!(
            cond(ExponentTuple {
                k2: 5,
                k3: 6,
                l2: 2,
                l1: 17
            }),
            Some(NecessaryCondition::NewtonInterval)
        );
        assert_eq!(
            cond(ExponentTuple {
                k2: 4,
                k3: 2,
                l2: 2,
                l1: 17
            }),
            Some(NecessaryCondition::Parity)
        );
        assert_eq!(
            cond(ExponentTuple {
                k2: 5,
                k3: 2,
                l2: 2,
                l1: 7
            }),
            Some(NecessaryCondition::Support)
        );
        assert_eq!(
            cond(ExponentTuple {
                k2: 0,
                k3: 2,
                l2: 2,
                l1: 17
            }),
            Some(NecessaryCondition::Support)
        );
        assert!(filter_exponents(&published_tuple(), &DistributionTarget::new(3, 3, 3)).is_err());
    }

    #[test]
    fn phi_examples() {
        let phi = derive_phi(&b29(), &published_tuple()).unwrap();
        assert_eq!(phi.a1, DensePoly::from_i64(&[5, -10]));
        assert_eq!(phi.a2, DensePoly::from_i64(&[2, -15]));
        assert_eq!(phi.rho1, Rational::new(1, 2));
        assert_eq!(phi.rho2, Rational::new(2, 15));
        assert!(Rational::zero() < phi.rho2 && phi.rho2 < phi.rho1);
        let c = critical_polynomial(&b29(), &published_tuple()).unwrap();
        assert_eq!(c, &phi.denominator - &phi.numerator);
        assert!(derive_phi(&b29(), &ExponentTuple::new(2, 5, 2, 17).unwrap()).is_err());
    }

    #[test]
    fn phi_identity_for_published_tuple() {
        // With P0 = b x^k2 (x+1)^l2 + x^k3 we have f = P0 / (1+x)^l1 and
        // (1+x)^(l1+1) f' = P0' (1+x) - l1 P0, which must equal x^(k3-1) C.
        let e = published_tuple();
        let p0 = level_numerator(&b29(), &e);
        let lhs = &(&p0.derivative() * &DensePoly::from_i64(&[1, 1]))
            - &p0.scale(&Rational::from_integer(e.l1));
        let rhs = critical_polynomial(&b29(), &e)
            .unwrap()
            .shift_up((e.k3 - 1) as usize);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn critical_pattern_of_published_example() {
        assert_eq!(
            critical_pattern(&b29(), &published_tuple()).unwrap(),
            [3, 1, 2]
        );
        let s = critical_structure(&b29(), &published_tuple()).unwrap();
        assert_eq!(s.len(), 6);
        // 0 and -1 are never critical points here.
        assert!(s
            .iter()
            .all(|(iv, _)| !iv.contains(&Rational::zero()) && !iv.contains(&Rational::from(-1))));
    }

    #[test]
    fn level_search_finds_published_coefficient() {
        let cands =
            search_level(&b29(), &published_tuple(), &DistributionTarget::canonical()).unwrap();
        assert_eq!(cands, vec![published_a()]);
        assert!(search_level(
            &b29(),
            &published_tuple(),
            &DistributionTarget::new(9, 0, 0)
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn certify_published_example() {
        let ex = certify_example(&published_a(), &b29(), &published_tuple()).unwrap();
        assert_eq!(ex.reduced_counts, [4, 2, 3]);
        assert!(ex.all_simple && ex.within_target);
        assert_eq!(ex.report.total, 11);
        assert_eq!(ex.roots.len(), 9);
        assert_eq!(ex.roots_in(IntervalId::I1).len(), 4);
        assert_eq!(ex.roots_in(IntervalId::I2).len(), 2);
        assert_eq!(ex.roots_in(IntervalId::I3).len(), 3);
    }

    #[test]
    fn wrong_sign_of_a_fails() {
        let ex = certify_example(&-published_a(), &b29(), &published_tuple()).unwrap();
        assert!(!ex.within_target);
    }

    #[test]
    fn full_trinomial_shape() {
        let f = full_trinomial(&published_a(), &b29(), &published_tuple());
        let expected: Fewnomial2 = "-601/250000 x y^18 + 29 x^6 y^3 + x^3 y".parse().unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn small_grid_search() {
        let config = SearchConfig {
            k2: 5..=5,
            k3: 2..=2,
            l2: 2..=2,
            l1: 17..=17,
            b_grid: vec![Rational::from(1), b29()],
            target: DistributionTarget::canonical(),
            apply_filter: true,
            width: default_root_width(),
        };
        let found = search(&config).unwrap();
        assert!(found
            .iter()
            .any(|ex| ex.b == b29() && ex.report.total == 11));
        assert!(found.iter().all(|ex| ex.within_target));
    }
}
