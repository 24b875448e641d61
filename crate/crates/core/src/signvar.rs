//! Descartes sign variations and Newton-interval predicates.
//!
//! `V(h)` counts sign changes in the coefficient sequence of `h`, ignoring
//! zeros; it bounds the number of positive roots counted with multiplicity.
//! The interval variants move `]-inf,-1[` and `]-1,0[` onto `]0,+inf[` first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fewnomial::{substitute_line, Fewnomial2, Line};
use crate::poly::{transform_z, DensePoly, Transform};
use crate::zpoly;

/// One of the three open intervals cut out by the points `0` and `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntervalId {
    /// `]0, +inf[`
    I1,
    /// `]-inf, -1[`
    I2,
    /// `]-1, 0[`
    I3,
}

impl IntervalId {
    pub const ALL: [IntervalId; 3] = [IntervalId::I1, IntervalId::I2, IntervalId::I3];

    pub fn index(self) -> usize {
        match self {
            IntervalId::I1 => 0,
            IntervalId::I2 => 1,
            IntervalId::I3 => 2,
        }
    }
}

impl fmt::Display for IntervalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IntervalId::I1 => "I1",
            IntervalId::I2 => "I2",
            IntervalId::I3 => "I3",
        };
        f.write_str(s)
    }
}

/// Exponent support `[lo, hi]` of a nonzero univariate polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonInterval {
    pub lo: usize,
    pub hi: usize,
}

impl NewtonInterval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "newton interval with lo > hi");
        NewtonInterval { lo, hi }
    }
}

pub fn sign_variations(h: &DensePoly) -> Result<usize> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut last = 0;
    let mut count = 0;
    for c in h.coeffs() {
        let s = c.signum();
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    Ok(count)
}

/// `V_{I}(h)`: `V(h)`, `V(h(-1-x))` or `V((x+1)^d h(-x/(x+1)))`.
pub fn v_interval(h: &DensePoly, i: IntervalId) -> Result<usize> {
    let (_, z) = h.to_zpoly().ok_or(Error::ZeroPolynomial)?;
    Ok(v_interval_z(&z, i))
}

pub(crate) fn v_interval_z(z: &[num_bigint::BigInt], i: IntervalId) -> usize {
    match i {
        IntervalId::I1 => zpoly::sign_variations(z),
        IntervalId::I2 => zpoly::sign_variations(&transform_z(z, Transform::H3)),
        IntervalId::I3 => zpoly::sign_variations(&transform_z(z, Transform::H2)),
    }
}

pub fn newton_interval(h: &DensePoly) -> Result<NewtonInterval> {
    let hi = h.degree().ok_or(Error::ZeroPolynomial)?;
    let lo = h.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    Ok(NewtonInterval { lo, hi })
}

/// `g` lies in the interior of `f`: `f.lo < g.lo` and `g.hi < f.hi`.
pub fn strictly_inside(g: NewtonInterval, f: NewtonInterval) -> bool {
    f.lo < g.lo && g.hi < f.hi
}

/// Outcome of checking the exponent ordering forced by `V(f(x,x+1)) = 2t-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "term", rename_all = "snake_case")]
pub enum SharpnessOrdering {
    /// `V(f(x,x+1)) < 2t - 2`, or `f(x,x+1)` vanishes.
    NotApplicable,
    Holds,
    /// Index (into `f.terms()`) of the first term breaking the ordering.
    WitnessViolation(usize),
}

/// When `V(f(x,x+1)) = 2t-2`, every term other than the distinguished one
/// (maximal `by`, ties broken by maximal `bx`) must satisfy
/// `bx_t < bx_i` and `bx_i + by_i < bx_t + by_t`.
pub fn check_sharpness_ordering(f: &Fewnomial2) -> Result<SharpnessOrdering> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = f.term_count();
    let g = substitute_line(f, &Line::unit());
    if g.is_zero() {
        return Ok(SharpnessOrdering::NotApplicable);
    }
    if sign_variations(&g)? < 2 * t - 2 {
        return Ok(SharpnessOrdering::NotApplicable);
    }
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&i| (f.terms()[i].by, f.terms()[i].bx));
    let top = &f.terms()[order[t - 1]];
    let outer = NewtonInterval::new(top.bx as usize, (top.bx + top.by) as usize);
    for &i in &order[..t - 1] {
        let term = &f.terms()[i];
        let inner = NewtonInterval::new(term.bx as usize, (term.bx + term.by) as usize);
        if !strictly_inside(inner, outer) {
            return Ok(SharpnessOrdering::WitnessViolation(i));
        }
    }
    Ok(SharpnessOrdering::Holds)
}
