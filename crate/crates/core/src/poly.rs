//! Dense univariate polynomials over the rationals.
//!
//! `DensePoly` stores coefficients in ascending degree order. The vector is
//! empty for the zero polynomial and otherwise ends in a nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::zpoly;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<Rational>", from = "Vec<Rational>")]
pub struct DensePoly {
    coeffs: Vec<Rational>,
}

/// Arithmetic operation selector for [`DensePoly::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// The three interval transforms used to move roots between `]0, +inf[`,
/// `]-inf, -1[` and `]-1, 0[`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    /// `x^d h(1/x)`
    H1,
    /// `(x+1)^d h(-x/(x+1))`
    H2,
    /// `h(-1-x)`
    H3,
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::H1 => "h1",
            Transform::H2 => "h2",
            Transform::H3 => "h3",
        })
    }
}

impl std::str::FromStr for Transform {
    type Err = crate::error::ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(Transform::H1),
            "h2" => Ok(Transform::H2),
            "h3" => Ok(Transform::H3),
            _ => Err(crate::error::ParseError::new(
                0,
                format!("unknown transform {s:?}"),
            )),
        }
    }
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        DensePoly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        DensePoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        DensePoly { coeffs }
    }

    /// Build from ascending coefficients; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        DensePoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub(crate) fn from_zpoly(z: &[BigInt]) -> Self {
        DensePoly::from_coeffs(z.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Primitive integer form: `self = scale * z` with `lc(z) > 0`.
    pub(crate) fn to_zpoly(&self) -> Option<(Rational, zpoly::ZPoly)> {
        zpoly::from_rationals(&self.coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` (minus infinity) for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> DensePoly {
        if c.is_zero() {
            return DensePoly::zero();
        }
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs }
    }

    pub fn arith(&self, other: &DensePoly, op: ArithOp) -> DensePoly {
        match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        }
    }

    pub fn pow(&self, n: u32) -> DensePoly {
        let mut result = DensePoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `(x + 1)^n` with exact binomial coefficients.
    pub fn binomial_power(n: usize) -> DensePoly {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = BigInt::from(1);
        coeffs.push(Rational::from_integer(c.clone()));
        for k in 1..=n {
            c = c * BigInt::from(n - k + 1) / BigInt::from(k);
            coeffs.push(Rational::from_integer(c.clone()));
        }
        DensePoly { coeffs }
    }

    /// `(a x + b)^n`.
    pub fn linear_power(a: &Rational, b: &Rational, n: usize) -> DensePoly {
        let base = DensePoly::from_coeffs(vec![b.clone(), a.clone()]);
        base.pow(n as u32)
    }

    pub fn derivative(&self) -> DensePoly {
        DensePoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from_integer(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, divisor: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((DensePoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - dd + j] -= &t;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        Ok((DensePoly::from_coeffs(quot), DensePoly::from_coeffs(rem)))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> DensePoly {
        match self.leading_coeff() {
            None => DensePoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &DensePoly) -> Result<DensePoly> {
        match (self.to_zpoly(), other.to_zpoly()) {
            (None, None) => Err(Error::GcdOfZeros),
            (Some(_), None) => Ok(self.monic()),
            (None, Some(_)) => Ok(other.monic()),
            (Some((_, a)), Some((_, b))) => Ok(DensePoly::from_zpoly(&zpoly::gcd(&a, &b)).monic()),
        }
    }

    /// Yun square-free decomposition: `self = c * prod f_i^{m_i}` with each
    /// `f_i` monic, square-free and pairwise coprime, listed by increasing
    /// multiplicity.
    pub fn squarefree_decompose(&self) -> Result<Vec<(DensePoly, usize)>> {
        let (_, z) = self.to_zpoly().ok_or(Error::ZeroPolynomial)?;
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        if zpoly::squarefree_mod_p(&z) {
            return Ok(vec![(self.monic(), 1)]);
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp)?;
        let mut b = p.div_rem(&a0)?.0;
        let c = dp.div_rem(&a0)?.0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d)?;
            b = b.div_rem(&a)?.0;
            let c = d.div_rem(&a)?.0;
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Apply one of the interval transforms with `d = deg(self)`.
    pub fn transform(&self, which: Transform) -> Result<DensePoly> {
        let (scale, z) = self.to_zpoly().ok_or(Error::ZeroPolynomial)?;
        let t = transform_z(&z, which);
        Ok(DensePoly::from_zpoly(&t).scale(&scale))
    }
}

pub(crate) fn transform_z(z: &[BigInt], which: Transform) -> zpoly::ZPoly {
    let d = z.len() - 1;
    match which {
        Transform::H1 => zpoly::reverse(z, d),
        Transform::H3 => zpoly::taylor_shift_one(&zpoly::negate_odd(z)),
        Transform::H2 => {
            // x^d s(1/x) with s(y) = y^d h(-1/y) shifted by one.
            let r = zpoly::reverse(&zpoly::negate_odd(z), d);
            let s = zpoly::taylor_shift_one(&r);
            zpoly::reverse(&s, d)
        }
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly({self})")
    }
}

impl From<Vec<Rational>> for DensePoly {
    fn from(v: Vec<Rational>) -> Self {
        DensePoly::from_coeffs(v)
    }
}

impl From<DensePoly> for Vec<Rational> {
    fn from(p: DensePoly) -> Self {
        p.coeffs
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for DensePoly {
            type Output = DensePoly;
            fn $method(self, rhs: DensePoly) -> DensePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
