use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bareiss::ExactRing;
use super::LinalgError;

/// Monomial `b^b * c^c`, ordered graded-lexicographically with `b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { b: 0, c: 0 };

    pub fn new(b: u32, c: u32) -> Self {
        Self { b, c }
    }

    pub fn degree(&self) -> u32 {
        self.b + self.c
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.b <= other.b && self.c <= other.c
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.c.cmp(&other.c))
            .then(self.b.cmp(&other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { b: self.b + rhs.b, c: self.c + rhs.c }
    }
}

/// Sparse polynomial in `Z[b, c]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PolyZ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(v: impl Into<BigInt>) -> Self {
        Self::term(v, Monomial::ONE)
    }

    pub fn b() -> Self {
        Self::term(1, Monomial::new(1, 0))
    }

    pub fn c() -> Self {
        Self::term(1, Monomial::new(0, 1))
    }

    pub fn term(coeff: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, b: &BigInt, c: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, k)| k * num_traits::pow(b.clone(), m.b as usize) * num_traits::pow(c.clone(), m.c as usize))
            .sum()
    }

    pub fn eval_i64(&self, b: i64, c: i64) -> BigInt {
        self.eval(&BigInt::from(b), &BigInt::from(c))
    }

    /// `self == other` or `self == -other`.
    pub fn eq_up_to_sign(&self, other: &PolyZ) -> bool {
        self == other || *self == -other
    }

    /// Exact quotient `self / divisor`; fails if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &PolyZ) -> Result<PolyZ, LinalgError> {
        let (dm, dc) = divisor
            .leading()
            .ok_or_else(|| LinalgError::ExactDivisionFailure(format!("({self}) / 0")))?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = PolyZ::zero();
        while let Some((rm, rc)) = rem.leading() {
            let (rm, rc) = (*rm, rc.clone());
            let (q, r) = rc.div_rem(&dc);
            if !dm.divides(&rm) || !r.is_zero() {
                return Err(LinalgError::ExactDivisionFailure(format!("({self}) / ({divisor})")));
            }
            let t = PolyZ::term(q, Monomial::new(rm.b - dm.b, rm.c - dm.c));
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok(quot)
    }
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        let mut out = self.clone();
        for (m, k) in &rhs.terms {
            out.add_term(*m, k.clone());
        }
        out
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        let mut out = self.clone();
        for (m, k) in &rhs.terms {
            out.add_term(*m, -k);
        }
        out
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        let mut out = PolyZ::zero();
        for (m1, k1) in &self.terms {
            for (m2, k2) in &rhs.terms {
                out.add_term(*m1 * *m2, k1 * k2);
            }
        }
        out
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ { terms: self.terms.iter().map(|(m, k)| (*m, -k)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PolyZ {
            type Output = PolyZ;
            fn $f(self, rhs: PolyZ) -> PolyZ {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for PolyZ {
    fn from(v: i64) -> Self {
        PolyZ::constant(v)
    }
}

impl ExactRing for PolyZ {
    fn zero_el() -> Self {
        PolyZ::zero()
    }
    fn one_el() -> Self {
        PolyZ::one()
    }
    fn is_zero_el(&self) -> bool {
        PolyZ::is_zero(self)
    }
    fn neg_el(&self) -> Self {
        -self
    }
    fn mul_el(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_el(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self, LinalgError> {
        PolyZ::exact_div(self, divisor)
    }
}

impl fmt::Display for PolyZ {
    /// Canonical form: terms in decreasing monomial order, `*` between
    /// factors, `^` for powers, no spaces. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, k)) in self.terms.iter().rev().enumerate() {
            let mag = k.abs();
            if k.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || *m == Monomial::ONE {
                factors.push(mag.to_string());
            }
            for (name, e) in [("b", m.b), ("c", m.c)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for PolyZ {
    type Err = LinalgError;

    /// Accepts integers, the variables `b` and `c`, `+ - * ^` and parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = PolyParser { toks: &tokens, pos: 0 };
        let out = p.expr()?;
        if p.pos != tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    toks: &'a [char],
    pos: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> LinalgError {
        let text: String = self.toks.iter().collect();
        LinalgError::Parse(format!("{what} at offset {} in {text:?}", self.pos))
    }

    fn expr(&mut self) -> Result<PolyZ, LinalgError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyZ, LinalgError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<PolyZ, LinalgError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyZ, LinalgError> {
        match self.peek() {
            Some('b') => {
                self.pos += 1;
                Ok(PolyZ::b())
            }
            Some('c') => {
                self.pos += 1;
                Ok(PolyZ::c())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => Ok(PolyZ::constant(self.integer()?)),
            _ => Err(self.error("expected integer, variable or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, LinalgError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits: String = self.toks[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
