//! Sparse bivariate polynomials `sum c_i x^bx_i y^by_i` and real lines.
//!
//! Text format: terms separated by `+`/`-`, each term `C x^B y^G` where `C`
//! is an integer, `p/q`, or a decimal literal (read exactly, so `-0.002404`
//! is `-601/250000`). An omitted exponent means 1 and an omitted variable
//! means exponent 0. Factors may be separated by whitespace or `*`.
//!
//! JSON form: `{"terms":[{"c":"-601/250000","bx":1,"by":18}, ...]}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::poly::DensePoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub c: Rational,
    /// exponent of x
    pub bx: u32,
    /// exponent of y
    pub by: u32,
}

impl Term {
    pub fn new(c: Rational, bx: u32, by: u32) -> Self {
        Term { c, bx, by }
    }
}

/// Sparse polynomial in `x, y` with distinct exponent pairs and nonzero
/// coefficients. The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFewnomial")]
pub struct Fewnomial2 {
    terms: Vec<Term>,
}

#[derive(Deserialize)]
struct RawFewnomial {
    terms: Vec<Term>,
}

impl TryFrom<RawFewnomial> for Fewnomial2 {
    type Error = String;
    fn try_from(raw: RawFewnomial) -> std::result::Result<Self, String> {
        Fewnomial2::from_terms(raw.terms).map_err(|e| e.to_string())
    }
}

impl Fewnomial2 {
    /// Strict constructor: rejects zero coefficients and repeated exponent pairs.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for t in &terms {
            if t.c.is_zero() {
                return Err(Error::InvalidExponents(format!(
                    "zero coefficient on x^{} y^{}",
                    t.bx, t.by
                )));
            }
            if !seen.insert((t.bx, t.by)) {
                return Err(Error::InvalidExponents(format!(
                    "repeated monomial x^{} y^{}",
                    t.bx, t.by
                )));
            }
        }
        Ok(Fewnomial2 { terms })
    }

    /// Lenient constructor: merges like monomials (keeping first-seen order)
    /// and drops the ones that cancel.
    pub fn collect(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut order: Vec<(u32, u32)> = Vec::new();
        let mut sums: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for t in terms {
            let key = (t.bx, t.by);
            match sums.get_mut(&key) {
                Some(acc) => *acc += &t.c,
                None => {
                    order.push(key);
                    sums.insert(key, t.c);
                }
            }
        }
        let terms = order
            .into_iter()
            .filter_map(|key| {
                let c = sums.remove(&key).unwrap();
                (!c.is_zero()).then(|| Term::new(c, key.0, key.1))
            })
            .collect();
        Fewnomial2 { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of nonzero terms `t`.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|t| &t.c * &x.pow(t.bx as i32) * y.pow(t.by as i32))
            .sum()
    }

    /// Multiply by the monomial `x^p y^q`.
    pub fn shift(&self, p: u32, q: u32) -> Fewnomial2 {
        Fewnomial2 {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.c.clone(), t.bx + p, t.by + q))
                .collect(),
        }
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, ParseError> {
        serde_json::from_str(s).map_err(|e| ParseError::new(e.column(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fewnomial serializes")
    }

    /// Parse either the text format or, when the input starts with `{`, JSON.
    pub fn parse_any(s: &str) -> std::result::Result<Self, ParseError> {
        if s.trim_start().starts_with('{') {
            Fewnomial2::from_json(s)
        } else {
            s.parse()
        }
    }
}

/// The line `y = a x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational) -> Self {
        Line { a, b }
    }

    /// `y = x + 1`.
    pub fn unit() -> Self {
        Line::new(Rational::one(), Rational::one())
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }
}

impl FromStr for Line {
    type Err = ParseError;
    /// `"a,b"`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| ParseError::new(1, format!("line {s:?} must be written a,b")))?;
        let col = a.chars().count() + 2;
        let a = a
            .parse()
            .map_err(|e: ParseError| ParseError::new(1, e.message))?;
        let b = b
            .parse()
            .map_err(|e: ParseError| ParseError::new(col, e.message))?;
        Ok(Line::new(a, b))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// `g(x) = f(x, a x + b)`, exactly expanded. Zero when `f` vanishes on the line.
pub fn substitute_line(f: &Fewnomial2, line: &Line) -> DensePoly {
    let unit = line.a.is_one() && line.b.is_one();
    let mut powers: BTreeMap<u32, DensePoly> = BTreeMap::new();
    let mut acc = DensePoly::zero();
    for t in &f.terms {
        let pw = powers.entry(t.by).or_insert_with(|| {
            if unit {
                DensePoly::binomial_power(t.by as usize)
            } else {
                DensePoly::linear_power(&line.a, &line.b, t.by as usize)
            }
        });
        let term = pw.scale(&t.c).shift_up(t.bx as usize);
        acc = &acc + &term;
    }
    acc
}

impl fmt::Display for Fewnomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.c.signum() < 0;
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = t.c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (t.bx == 0 && t.by == 0) {
                parts.push(mag.to_string());
            }
            for (v, e) in [('x', t.bx), ('y', t.by)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Fewnomial2 {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut parser = Parser::new(s);
        let terms = parser.polynomial()?;
        let f = Fewnomial2::collect(terms);
        if f.is_zero() {
            return Err(ParseError::new(1, "polynomial is identically zero"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos + 1, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn polynomial(&mut self) -> std::result::Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err(format!("empty polynomial {:?}", self.src)));
        }
        let mut negative = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negative = c == '-';
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let mut term = self.term()?;
            if negative {
                term.c = -term.c;
            }
            terms.push(term);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c @ ('+' | '-')) => {
                    negative = c == '-';
                    self.pos += 1;
                }
                Some(c) => return Err(self.err(format!("unexpected {c:?}, expected + or -"))),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> std::result::Result<Term, ParseError> {
        let start = self.pos;
        let c = match self.peek() {
            Some(ch) if ch.is_ascii_digit() || ch == '.' => self.number()?,
            _ => Rational::one(),
        };
        let mut bx = None;
        let mut by = None;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') && self.pos > start {
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some(v @ ('x' | 'y' | 'X' | 'Y')) => {
                    let at = self.pos;
                    self.pos += 1;
                    let e = self.exponent()?;
                    let slot = if v.eq_ignore_ascii_case(&'x') {
                        &mut bx
                    } else {
                        &mut by
                    };
                    if slot.is_some() {
                        return Err(ParseError::new(
                            at + 1,
                            format!("variable {v} repeated in term"),
                        ));
                    }
                    *slot = Some(e);
                }
                _ => break,
            }
        }
        if self.pos == start {
            return Err(self.err("expected a coefficient or a variable"));
        }
        Ok(Term::new(c, bx.unwrap_or(0), by.unwrap_or(0)))
    }

    fn exponent(&mut self) -> std::result::Result<u32, ParseError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| ParseError::new(start + 1, format!("exponent {text} too large")))
    }

    fn number(&mut self) -> std::result::Result<Rational, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
        };
        digits(self);
        if matches!(self.peek(), Some('.' | ',')) {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            digits(self);
            if exp_start == self.pos {
                self.pos = save;
            }
        }
        let mut text: String = self.chars[start..self.pos].iter().collect();
        // Optional `/q` denominator.
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den_start = self.pos;
            digits(self);
            if den_start == self.pos {
                return Err(self.err("expected denominator after '/'"));
            }
            let den: String = self.chars[den_start..self.pos].iter().collect();
            text = format!("{text}/{den}");
        } else {
            self.pos = save;
        }
        text.parse()
            .map_err(|e: ParseError| ParseError::new(start + 1, e.message))
    }
}
