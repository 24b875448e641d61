//! Exact rational scalars.
//!
//! [`Rational`] wraps `num_rational::BigRational`, which keeps every value
//! canonical: numerator and denominator coprime, denominator positive, zero
//! stored as `0/1`. Equality is therefore structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Arbitrary-precision exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest `f64`; only used for display and heuristics.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.signum() < 0 {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        (self + other) / Rational::from_integer(2)
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Exact value of a finite `f64` (every finite double is a dyadic rational).
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    /// The rational in the open interval `(lo, hi)` with the fewest decimal
    /// places, choosing the one nearest the midpoint among equals.
    ///
    /// Panics unless `lo < hi`.
    pub fn simplest_decimal_between(lo: &Rational, hi: &Rational) -> Rational {
        assert!(lo < hi, "empty interval");
        let mid = lo.midpoint(hi);
        let ten = BigInt::from(10);
        let mut scale = BigInt::one();
        loop {
            let below = (&mid * &Rational::from_integer(scale.clone())).floor();
            let best = [below.clone(), below + 1]
                .into_iter()
                .map(|k| Rational::new(k, scale.clone()))
                .filter(|c| c > lo && c < hi)
                .min_by(|x, y| (x - &mid).abs().cmp(&(y - &mid).abs()));
            if let Some(best) = best {
                return best;
            }
            scale *= &ten;
        }
    }

    /// Render with a fixed number of decimal places (rounded half away from zero).
    pub fn to_decimal_string(&self, places: usize) -> String {
        let scale = BigInt::from(10).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let neg = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let s = if places == 0 {
            digits
        } else {
            let padded = format!("{:0>width$}", digits, width = places + 1);
            let (int, frac) = padded.split_at(padded.len() - places);
            format!("{int}.{frac}")
        };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, or a decimal literal such as `-0.002404`, `1e-8` or
/// `-0,002404` (decimal comma). Decimals are read as exact rationals.
impl FromStr for Rational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| ParseError::new(0, format!("invalid rational {s:?}: {msg}"));
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty"));
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
            let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational::new(p, q));
        }
        parse_decimal(t).ok_or_else(|| err("expected integer, p/q or decimal"))
    }
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int, frac) = match mantissa.find(['.', ',']) {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let exp10 = exponent - frac.len() as i32;
    let ten = Rational::from_integer(10);
    let value = Rational::from_integer(digits) * ten.pow(exp10);
    Some(if neg { -value } else { value })
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::from_integer(n)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = Rational::new(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
        assert_eq!(Rational::zero().denom(), &BigInt::one());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(r("-0.002404"), Rational::new(-601, 250000));
        assert_eq!(r("-0,002404"), Rational::new(-601, 250000));
        assert_eq!(r("1e-8"), Rational::new(1, 100_000_000));
        assert_eq!(r("2.5E2"), Rational::from_integer(250));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("29"), Rational::from_integer(29));
        assert_eq!(r(" -3/6 "), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "-", "1e", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["-601/250000", "29", "0", "7/3"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(
            Rational::new(-601, 250000).to_decimal_string(6),
            "-0.002404"
        );
        assert_eq!(Rational::new(2, 3).to_decimal_string(5), "0.66667");
        assert_eq!(Rational::new(-1, 3).to_decimal_string(2), "-0.33");
        assert_eq!(Rational::from_integer(5).to_decimal_string(0), "5");
    }

    #[test]
    fn simplest_decimal() {
        let lo = r("0.0024033");
        let hi = r("0.0024053");
        assert_eq!(Rational::simplest_decimal_between(&lo, &hi), r("0.002404"));
        assert_eq!(
            Rational::simplest_decimal_between(&r("-1/3"), &r("1/3")),
            Rational::zero()
        );
        assert_eq!(
            Rational::simplest_decimal_between(&r("1/3"), &r("2/3")),
            r("0.5")
        );
    }

    #[test]
    fn serde_as_string() {
        let x = Rational::new(-601, 250000);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "\"-601/250000\"");
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let int: Rational = serde_json::from_str("29").unwrap();
        assert_eq!(int, Rational::from_integer(29));
    }
}
