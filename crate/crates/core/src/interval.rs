//! Closed intervals with rational endpoints and outward-exact arithmetic.
//!
//! Every operation returns an interval containing all results of the
//! operation applied to points of the operands; nothing is rounded.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::DensePoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// The intervals share at least one point.
    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &RatInterval) -> Option<RatInterval> {
        if other.contains_zero() {
            return None;
        }
        let inv = RatInterval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        Some(self.mul(&inv))
    }

    /// Exact range of `x^n` over the interval.
    pub fn powi(&self, n: u32) -> RatInterval {
        if n == 0 {
            return RatInterval::point(Rational::one());
        }
        let a = self.lo.pow(n as i32);
        let b = self.hi.pow(n as i32);
        if n % 2 == 1 || self.lo.signum() >= 0 {
            RatInterval { lo: a, hi: b }
        } else if self.hi.signum() <= 0 {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        }
    }

    /// Horner evaluation of `p` over the interval.
    pub fn eval(&self, p: &DensePoly) -> RatInterval {
        let mut acc = RatInterval::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
