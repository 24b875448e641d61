//! Exact real root counting and isolation.
//!
//! Two independent counters are provided:
//!
//! * [`sturm_count_distinct`] uses a Sturm chain with content-normalized
//!   pseudo-remainders and counts distinct roots in `(lo, hi]`.
//! * [`count_distinct`] and [`isolate_roots`] use Descartes' rule with
//!   bisection (Vincent–Collins–Akritas) on open intervals.
//!
//! Multiplicities come from the square-free decomposition; roots at exact
//! rational points are found by evaluation and synthetic division.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::DensePoly;
use crate::rational::Rational;
use crate::signvar::{v_interval_z, IntervalId};
use crate::zpoly::{self, ZPoly};

/// Interval endpoint that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(x: impl Into<Rational>) -> Self {
        Bound::Finite(x.into())
    }

    fn rank(&self) -> i8 {
        match self {
            Bound::NegInf => -1,
            Bound::Finite(_) => 0,
            Bound::PosInf => 1,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

/// The open interval corresponding to `id`.
pub fn interval_bounds(id: IntervalId) -> (Bound, Bound) {
    match id {
        IntervalId::I1 => (Bound::finite(0), Bound::PosInf),
        IntervalId::I2 => (Bound::NegInf, Bound::finite(-1)),
        IntervalId::I3 => (Bound::finite(-1), Bound::finite(0)),
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each member scaled by a positive
/// constant to keep coefficients primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
}

impl SturmChain {
    pub fn new(p: &DensePoly) -> Result<Self> {
        let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
        Ok(SturmChain::from_z(z))
    }

    pub(crate) fn from_z(z: ZPoly) -> Self {
        let mut chain = vec![z.clone()];
        let dz = zpoly::primitive(zpoly::derivative(&z));
        if dz.is_empty() {
            return SturmChain { chain };
        }
        chain.push(dz);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.len() <= 1 {
                break;
            }
            let mut r = zpoly::pseudo_remainder(a, b);
            if r.is_empty() {
                break;
            }
            // prem = lc(b)^delta * rem; flip so that r is a positive multiple of -rem.
            let delta = a.len() - b.len() + 1;
            let flip = !(b.last().unwrap().is_negative() && delta % 2 == 1);
            if flip {
                for c in r.iter_mut() {
                    *c = -&*c;
                }
            }
            chain.push(zpoly::primitive(r));
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn polys(&self) -> Vec<DensePoly> {
        self.chain
            .iter()
            .map(|z| DensePoly::from_zpoly(z))
            .collect()
    }

    /// Number of sign changes of the chain evaluated at `x`.
    pub fn variations_at(&self, x: &Bound) -> usize {
        let signs = self.chain.iter().map(|z| match x {
            Bound::NegInf => zpoly::sign_at_infinity(z, false),
            Bound::PosInf => zpoly::sign_at_infinity(z, true),
            Bound::Finite(r) => zpoly::sign_at_rational(z, r),
        });
        let mut last = 0i8;
        let mut count = 0;
        for s in signs {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

/// Square-free part as a primitive integer polynomial.
fn squarefree_part_z(z: &[BigInt]) -> ZPoly {
    if zpoly::squarefree_mod_p(z) {
        return z.to_vec();
    }
    let g = zpoly::gcd(z, &zpoly::derivative(z));
    if g.len() <= 1 {
        return z.to_vec();
    }
    let p = DensePoly::from_zpoly(z);
    let q = p
        .div_rem(&DensePoly::from_zpoly(&g))
        .expect("nonzero divisor")
        .0;
    q.to_zpoly().expect("nonzero quotient").1
}

fn check_bounds(lo: &Bound, hi: &Bound) -> Result<()> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    Ok(())
}

/// Distinct real roots of `p` in `(lo, hi]`, by Sturm's theorem.
pub fn sturm_count_distinct(p: &DensePoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    check_bounds(lo, hi)?;
    let chain = SturmChain::from_z(squarefree_part_z(&z));
    Ok(chain.variations_at(lo) - chain.variations_at(hi))
}

// ---------------------------------------------------------------------------
// Descartes bisection

/// Sub-interval of `]0,1[` found by bisection: `(c/2^k, (c+1)/2^k)`, or the
/// exact point `c/2^k`.
#[derive(Debug, Clone)]
struct Dyadic {
    k: u32,
    c: BigInt,
    exact: bool,
}

impl Dyadic {
    fn endpoints(&self) -> (Rational, Rational) {
        let den = BigInt::one() << self.k;
        let lo = Rational::new(self.c.clone(), den.clone());
        if self.exact {
            (lo.clone(), lo)
        } else {
            (lo, Rational::new(&self.c + 1, den))
        }
    }
}

/// Roots of the square-free `s` in the open unit interval.
fn bisect_unit(s: ZPoly, k: u32, c: BigInt, out: &mut Vec<Dyadic>) {
    let d = match zpoly::degree(&s) {
        Some(d) if d > 0 => d,
        _ => return,
    };
    let v = zpoly::sign_variations(&zpoly::taylor_shift_one(&zpoly::reverse(&s, d)));
    match v {
        0 => {}
        1 => out.push(Dyadic { k, c, exact: false }),
        _ => {
            let left = zpoly::primitive(zpoly::halve_argument(&s));
            let right = zpoly::taylor_shift_one(&left);
            let c2: BigInt = &c << 1usize;
            let mid_is_root = right.first().is_some_and(|r| r.is_zero());
            bisect_unit(left, k + 1, c2.clone(), out);
            if mid_is_root {
                out.push(Dyadic {
                    k: k + 1,
                    c: &c2 + 1,
                    exact: true,
                });
            }
            bisect_unit(right, k + 1, c2 + 1, out);
        }
    }
}

fn count_unit(s: ZPoly) -> usize {
    let mut out = Vec::new();
    bisect_unit(s, 0, BigInt::zero(), &mut out);
    out.len()
}

/// Monotone map `u -> (a u + b) / (c u + d)` from the bisection coordinate
/// back to `x`.
#[derive(Debug, Clone)]
struct Mobius {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Mobius {
    fn apply(&self, u: &Rational) -> Option<Rational> {
        let den = &(&self.c * u) + &self.d;
        if den.is_zero() {
            None
        } else {
            Some((&(&self.a * u) + &self.b) / den)
        }
    }

    /// `u` is the pole at 0 or 1, approached from inside `]0,1[`; returns
    /// `bound` with the sign of the limit.
    fn clamp_pole(&self, u: &Rational, bound: &Rational) -> Rational {
        let num = (&(&self.a * u) + &self.b).signum();
        let from_right = if u.is_zero() { 1 } else { -1 };
        if num * self.c.signum() * from_right > 0 {
            bound.clone()
        } else {
            -bound
        }
    }
}

/// A piece of the search: a polynomial in `u` whose roots in `]0,1[` are the
/// images of roots of `p` under `mobius`.
struct Piece {
    poly: ZPoly,
    mobius: Mobius,
}

/// Strict bound on the absolute value of every root (Cauchy).
fn cauchy_bound(z: &[BigInt]) -> Rational {
    let lc = z.last().expect("nonzero").abs();
    let max = z[..z.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(max, lc)
}

/// Decompose the open interval `(lo, hi)` into pieces on `]0,1[` plus the
/// finite split points that must be checked exactly.
fn pieces(z: &[BigInt], lo: &Bound, hi: &Bound) -> (Vec<Piece>, Vec<Rational>) {
    let r = Rational::from_integer;
    let d = z.len() - 1;
    match (lo, hi) {
        (Bound::Finite(l), Bound::Finite(h)) => {
            // x = l + (h - l) u
            let common = l.denom() * h.denom() / num_integer::Integer::gcd(l.denom(), h.denom());
            let a = l.numer() * (&common / l.denom());
            let b = h.numer() * (&common / h.denom());
            let poly = zpoly::primitive(zpoly::affine_substitute(z, &(&b - &a), &a, &common));
            let mobius = Mobius {
                a: h - l,
                b: l.clone(),
                c: r(0),
                d: r(1),
            };
            (vec![Piece { poly, mobius }], Vec::new())
        }
        (Bound::Finite(l), Bound::PosInf) => {
            // y = x - l > 0, split at y = 1.
            let y = zpoly::primitive(zpoly::affine_substitute(z, l.denom(), l.numer(), l.denom()));
            let near = Piece {
                poly: y.clone(),
                mobius: Mobius {
                    a: r(1),
                    b: l.clone(),
                    c: r(0),
                    d: r(1),
                },
            };
            let far = Piece {
                poly: zpoly::reverse(&y, d),
                mobius: Mobius {
                    a: l.clone(),
                    b: r(1),
                    c: r(1),
                    d: r(0),
                },
            };
            (vec![near, far], vec![l + &r(1)])
        }
        (Bound::NegInf, Bound::Finite(h)) => {
            // y = h - x > 0
            let neg_den = -h.denom();
            let y = zpoly::primitive(zpoly::affine_substitute(z, &neg_den, h.numer(), h.denom()));
            let far = Piece {
                poly: zpoly::reverse(&y, d),
                mobius: Mobius {
                    a: h.clone(),
                    b: r(-1),
                    c: r(1),
                    d: r(0),
                },
            };
            let near = Piece {
                poly: y,
                mobius: Mobius {
                    a: r(-1),
                    b: h.clone(),
                    c: r(0),
                    d: r(1),
                },
            };
            (vec![far, near], vec![h - &r(1)])
        }
        (Bound::NegInf, Bound::PosInf) => {
            let zero = Bound::finite(0);
            let (mut left, mut lsplit) = pieces(z, &Bound::NegInf, &zero);
            let (right, rsplit) = pieces(z, &zero, &Bound::PosInf);
            left.extend(right);
            lsplit.push(r(0));
            lsplit.extend(rsplit);
            (left, lsplit)
        }
        _ => (Vec::new(), Vec::new()),
    }
}

fn in_open(x: &Rational, lo: &Bound, hi: &Bound) -> bool {
    let b = Bound::Finite(x.clone());
    lo < &b && &b < hi
}

/// Isolating intervals of the distinct roots of the square-free `z` in the
/// open interval `(lo, hi)`, unsorted.
fn isolate_squarefree(z: &[BigInt], lo: &Bound, hi: &Bound) -> Vec<(Rational, Rational)> {
    if z.len() <= 1 {
        return Vec::new();
    }
    let (ps, splits) = pieces(z, lo, hi);
    let bound = cauchy_bound(z);
    let mut out = Vec::new();
    for x in splits {
        if in_open(&x, lo, hi) && zpoly::sign_at_rational(z, &x) == 0 {
            out.push((x.clone(), x));
        }
    }
    for piece in ps {
        let mut found = Vec::new();
        bisect_unit(piece.poly, 0, BigInt::zero(), &mut found);
        for dy in found {
            let (u0, u1) = dy.endpoints();
            let x0 = piece.mobius.apply(&u0);
            let x1 = piece.mobius.apply(&u1);
            let (x0, x1) = match (x0, x1) {
                (Some(x0), Some(x1)) => (x0, x1),
                // A `u` endpoint mapped to infinity: clamp to the root bound.
                (Some(x), None) => (x, piece.mobius.clamp_pole(&u1, &bound)),
                (None, Some(x)) => (piece.mobius.clamp_pole(&u0, &bound), x),
                (None, None) => unreachable!("degenerate map"),
            };
            out.push(if x0 <= x1 { (x0, x1) } else { (x1, x0) });
        }
    }
    out
}

/// Distinct real roots of `p` in the open interval `(lo, hi)`, by Descartes
/// bisection.
pub fn count_distinct(p: &DensePoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    check_bounds(lo, hi)?;
    Ok(count_distinct_z(&squarefree_part_z(&z), lo, hi))
}

fn count_distinct_z(sf: &[BigInt], lo: &Bound, hi: &Bound) -> usize {
    if sf.len() <= 1 {
        return 0;
    }
    let (ps, splits) = pieces(sf, lo, hi);
    let exact = splits
        .iter()
        .filter(|x| in_open(x, lo, hi) && zpoly::sign_at_rational(sf, x) == 0)
        .count();
    exact + ps.into_iter().map(|p| count_unit(p.poly)).sum::<usize>()
}

/// Roots of `p` in `(lo, hi)` counted with multiplicity; the right endpoint
/// is included when `open_right` is false.
pub fn count_with_multiplicity(
    p: &DensePoly,
    lo: &Bound,
    hi: &Bound,
    open_right: bool,
) -> Result<usize> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    check_bounds(lo, hi)?;
    let mut total = 0;
    for (factor, mult) in factors_z(&z) {
        total += mult * count_distinct_z(&factor, lo, hi);
    }
    if !open_right {
        if let Bound::Finite(h) = hi {
            total += zpoly::strip_root(z, h.numer(), h.denom()).1;
        }
    }
    Ok(total)
}

/// Square-free factors as primitive integer polynomials with multiplicities.
fn factors_z(z: &[BigInt]) -> Vec<(ZPoly, usize)> {
    if z.len() <= 1 {
        return Vec::new();
    }
    if zpoly::squarefree_mod_p(z) {
        return vec![(z.to_vec(), 1)];
    }
    DensePoly::from_zpoly(z)
        .squarefree_decompose()
        .expect("nonzero")
        .into_iter()
        .map(|(f, m)| (f.to_zpoly().expect("nonzero factor").1, m))
        .collect()
}

/// Roots of `p` in the open interval `id`, counted with multiplicity.
pub fn count_in(p: &DensePoly, id: IntervalId) -> Result<usize> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    // Exact roots at 0 and -1 never lie inside, so strip them first.
    let (z, _) = zpoly::strip_root(z, &BigInt::zero(), &BigInt::one());
    let (z, _) = zpoly::strip_root(z, &BigInt::from(-1), &BigInt::one());
    Ok(count_in_z(&z, id))
}

/// Count in `id` for a polynomial with no roots at `0` or `-1`.
///
/// `V_I <= 1` already determines the count with multiplicity (Descartes'
/// bound plus parity), so the exact machinery only runs when `V_I >= 2`.
pub(crate) fn count_in_z(z: &[BigInt], id: IntervalId) -> usize {
    if z.len() <= 1 {
        return 0;
    }
    let v = v_interval_z(z, id);
    if v <= 1 {
        return v;
    }
    let (lo, hi) = interval_bounds(id);
    factors_z(z)
        .into_iter()
        .map(|(f, m)| m * count_distinct_z(&f, &lo, &hi))
        .sum()
}

// ---------------------------------------------------------------------------
// Isolation and refinement

/// Interval `(lo, hi)` holding exactly one distinct root, or the exact root
/// `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

/// Isolating intervals for the distinct roots of `p` in the open interval
/// `(lo, hi)`, sorted ascending and pairwise disjoint.
pub fn isolate_roots(p: &DensePoly, lo: &Bound, hi: &Bound) -> Result<Vec<IsolatingInterval>> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    check_bounds(lo, hi)?;
    let mut found: Vec<(IsolatingInterval, usize)> = Vec::new();
    let factors = factors_z(&z);
    for (idx, (f, m)) in factors.iter().enumerate() {
        for (a, b) in isolate_squarefree(f, lo, hi) {
            found.push((
                IsolatingInterval {
                    lo: a,
                    hi: b,
                    multiplicity: *m,
                },
                idx,
            ));
        }
    }
    // Roots of different factors are distinct; refine until intervals separate.
    loop {
        found.sort_by(|x, y| x.0.lo.cmp(&y.0.lo).then(x.0.hi.cmp(&y.0.hi)));
        let clash = found
            .windows(2)
            .position(|w| w[0].0.hi > w[1].0.lo || (w[0].0.is_exact() && w[0].0.lo == w[1].0.lo));
        let Some(i) = clash else { break };
        for j in [i, i + 1] {
            let (iv, idx) = &found[j];
            if !iv.is_exact() {
                let half = iv.width() / Rational::from_integer(2);
                let refined = refine_z(&factors[*idx].0, iv, &half)?;
                found[j].0 = refined;
            }
        }
    }
    Ok(found.into_iter().map(|(iv, _)| iv).collect())
}

/// Bisect `iv` until its width is at most `width`, keeping the root.
pub fn refine(
    p: &DensePoly,
    iv: &IsolatingInterval,
    width: &Rational,
) -> Result<IsolatingInterval> {
    let (_, z) = p.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    refine_z(&squarefree_part_z(&z), iv, width)
}

fn refine_z(z: &[BigInt], iv: &IsolatingInterval, width: &Rational) -> Result<IsolatingInterval> {
    if iv.is_exact() {
        return if zpoly::sign_at_rational(z, &iv.lo) == 0 {
            Ok(iv.clone())
        } else {
            Err(Error::NotIsolating)
        };
    }
    if iv.lo > iv.hi {
        return Err(Error::EmptyInterval);
    }
    let exact = |x: Rational| IsolatingInterval {
        lo: x.clone(),
        hi: x,
        multiplicity: iv.multiplicity,
    };
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let mut s_lo = zpoly::sign_at_rational(z, &lo);
    let mut s_hi = zpoly::sign_at_rational(z, &hi);
    if s_lo == 0 || s_hi == 0 {
        // An endpoint is itself a root, so signs alone cannot locate the
        // root inside; count with a Sturm chain until both endpoints clear.
        let chain = SturmChain::from_z(z.to_vec());
        let count = |a: &Rational, b: &Rational| {
            chain.variations_at(&Bound::Finite(a.clone()))
                - chain.variations_at(&Bound::Finite(b.clone()))
        };
        let inside = count(&lo, &hi) - usize::from(s_hi == 0);
        match inside {
            1 => {}
            0 if s_hi == 0 => return Ok(exact(hi)),
            _ => return Err(Error::NotIsolating),
        }
        while s_lo == 0 || s_hi == 0 {
            if &(&hi - &lo) <= width {
                return Ok(IsolatingInterval {
                    lo,
                    hi,
                    multiplicity: iv.multiplicity,
                });
            }
            let mid = lo.midpoint(&hi);
            let s_mid = zpoly::sign_at_rational(z, &mid);
            if s_mid == 0 {
                return Ok(exact(mid));
            }
            if count(&lo, &mid) == 1 {
                hi = mid;
                s_hi = s_mid;
            } else {
                lo = mid;
                s_lo = s_mid;
            }
        }
    }
    if s_lo == s_hi {
        return Err(Error::NotIsolating);
    }
    while &(&hi - &lo) > width {
        let mid = lo.midpoint(&hi);
        let s_mid = zpoly::sign_at_rational(z, &mid);
        if s_mid == 0 {
            return Ok(exact(mid));
        }
        if s_mid == s_hi {
            hi = mid;
            s_hi = s_mid;
        } else {
            lo = mid;
        }
    }
    Ok(IsolatingInterval {
        lo,
        hi,
        multiplicity: iv.multiplicity,
    })
}
