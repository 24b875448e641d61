//! Integer-coefficient polynomial kernels.
//!
//! Root counting only cares about a polynomial up to a nonzero constant, so
//! the hot paths work on primitive integer coefficient vectors (ascending
//! order, no trailing zeros) instead of rationals. Everything here is
//! crate-private plumbing behind `DensePoly`, `signvar` and `rootcount`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Split rational coefficients into `scale * z` with `z` primitive and its
/// leading coefficient positive. Returns `None` for the zero polynomial.
pub(crate) fn from_rationals(coeffs: &[Rational]) -> Option<(Rational, ZPoly)> {
    let lead = coeffs.iter().rev().find(|c| !c.is_zero())?;
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut z: ZPoly = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    trim(&mut z);
    let mut content = content(&z);
    if lead.signum() < 0 {
        content = -content;
    }
    for c in z.iter_mut() {
        *c = &*c / &content;
    }
    let scale = Rational::new(content, lcm);
    Some((scale, z))
}

#[cfg(test)]
pub(crate) fn to_rationals(scale: &Rational, z: &[BigInt]) -> Vec<Rational> {
    z.iter()
        .map(|c| scale * &Rational::from_integer(c.clone()))
        .collect()
}

/// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
pub(crate) fn content(z: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in z {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divide out the content, keeping the sign of the leading coefficient.
pub(crate) fn primitive(mut z: ZPoly) -> ZPoly {
    trim(&mut z);
    let g = content(&z);
    if !g.is_zero() && !g.is_one() {
        for c in z.iter_mut() {
            *c = &*c / &g;
        }
    }
    z
}

fn sign_of(c: &BigInt) -> i8 {
    match c.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn sign_variations(z: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in z {
        let s = sign_of(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `z(x + 1)`, by repeated synthetic steps.
pub(crate) fn taylor_shift_one(z: &[BigInt]) -> ZPoly {
    let mut a = z.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = a[j + 1].clone();
            a[j] += next;
        }
    }
    a
}

/// `z(-x)`.
pub(crate) fn negate_odd(z: &[BigInt]) -> ZPoly {
    z.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

/// `x^d z(1/x)` for `d >= deg z`.
pub(crate) fn reverse(z: &[BigInt], d: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, c) in z.iter().enumerate() {
        out[d - i] = c.clone();
    }
    trim(&mut out);
    out
}

/// `2^d z(x / 2)` where `d = deg z`.
pub(crate) fn halve_argument(z: &[BigInt]) -> ZPoly {
    let d = z.len().saturating_sub(1);
    z.iter().enumerate().map(|(i, c)| c << (d - i)).collect()
}

/// Substitute `x -> (p x + q) / r` and clear the denominator `r^d`, with
/// `r` nonzero. The result has the same roots mapped affinely.
pub(crate) fn affine_substitute(z: &[BigInt], p: &BigInt, q: &BigInt, r: &BigInt) -> ZPoly {
    let d = match degree(z) {
        Some(d) => d,
        None => return Vec::new(),
    };
    // Horner on polynomials: acc = acc * (p x + q) + c * r^(d - i).
    let mut rpow = vec![BigInt::one(); d + 1];
    for i in 1..=d {
        rpow[i] = &rpow[i - 1] * r;
    }
    let mut acc: ZPoly = Vec::new();
    for (i, c) in z.iter().enumerate().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j] += a * q;
            next[j + 1] += a * p;
        }
        next[0] += c * &rpow[d - i];
        acc = next;
    }
    trim(&mut acc);
    acc
}

/// Sign of `z(num / den)` with `den > 0`, via homogeneous evaluation.
pub(crate) fn sign_at(z: &[BigInt], num: &BigInt, den: &BigInt) -> i8 {
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // acc = sum c_i num^i den^(d-i), built by Horner from the top.
    for c in z.iter().rev() {
        acc = acc * num + c * &dpow;
        dpow *= den;
    }
    sign_of(&acc)
}

pub(crate) fn sign_at_rational(z: &[BigInt], x: &Rational) -> i8 {
    sign_at(z, x.numer(), x.denom())
}

/// Sign of `z(x)` as `x -> +inf` (`positive = true`) or `-inf`.
pub(crate) fn sign_at_infinity(z: &[BigInt], positive: bool) -> i8 {
    match z.last() {
        None => 0,
        Some(lc) => {
            let s = sign_of(lc);
            if !positive && (z.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// Exact division by `(den x - num)`; returns `None` if it does not divide.
pub(crate) fn divide_linear(z: &[BigInt], num: &BigInt, den: &BigInt) -> Option<ZPoly> {
    let n = z.len();
    if n < 2 {
        return None;
    }
    // z = (den x - num) * w, solve top-down.
    let mut w = vec![BigInt::zero(); n - 1];
    let mut rem = z.to_vec();
    for k in (1..n).rev() {
        let (q, r) = rem[k].div_rem(den);
        if !r.is_zero() {
            return None;
        }
        rem[k - 1] += &q * num;
        w[k - 1] = q;
    }
    if !rem[0].is_zero() {
        return None;
    }
    Some(w)
}

/// Strip every factor `(den x - num)` and report how many were removed.
pub(crate) fn strip_root(mut z: ZPoly, num: &BigInt, den: &BigInt) -> (ZPoly, usize) {
    let mut mult = 0;
    while sign_at(&z, num, den) == 0 && !z.is_empty() {
        match divide_linear(&z, num, den) {
            Some(w) => {
                z = w;
                mult += 1;
            }
            None => break,
        }
    }
    (z, mult)
}

pub(crate) fn derivative(z: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = z
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(da - db + 1) a mod b`.
pub(crate) fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo-remainder by zero");
    let lc = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    let mut steps = 0usize;
    let da = r.len().saturating_sub(1);
    let total = if r.len() > db { da - db + 1 } else { 0 };
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] -= &top * bc;
        }
        trim(&mut r);
        steps += 1;
    }
    // Complete the power so the multiplier is exactly lc^(da-db+1).
    for _ in steps..total {
        for c in r.iter_mut() {
            *c *= &lc;
        }
    }
    r
}

/// Primitive gcd over Z[x] (sign normalized to positive leading coefficient).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_remainder(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        for c in x.iter_mut() {
            *c = -&*c;
        }
    }
    x
}

const PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_000_000_007,
];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn reduce_mod(z: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    z.iter()
        .map(|c| c.mod_floor(&mb).to_u64().expect("residue fits"))
        .collect()
}

fn trim_u64(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    trim_u64(&mut a);
    trim_u64(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), inv, m);
            for (j, bc) in b.iter().enumerate() {
                let t = mulmod(f, *bc, m);
                a[j + shift] = (a[j + shift] + m - t) % m;
            }
            trim_u64(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Cheap sufficient test for square-freeness: if `gcd(z, z')` is constant
/// modulo a prime that does not divide the leading coefficient, then `z` is
/// square-free over Q. A `false` answer is inconclusive.
pub(crate) fn squarefree_mod_p(z: &[BigInt]) -> bool {
    let d = match degree(z) {
        Some(d) => d,
        None => return false,
    };
    if d <= 1 {
        return true;
    }
    let dz = derivative(z);
    for &m in &PRIMES {
        if (d as u64).is_multiple_of(m) {
            continue;
        }
        let zm = reduce_mod(z, m);
        if zm[d] == 0 {
            continue;
        }
        if gcd_degree_mod(zm, reduce_mod(&dz, m), m) == 0 {
            return true;
        }
    }
    false
}
