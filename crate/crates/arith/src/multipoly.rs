//! Sparse multivariate polynomials over a [`Ring`], keyed by exponent vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::rational::{format_rational, parse_rational};
use crate::scalar::{Field, Fp, Ring};
use crate::{ArithError, UniPoly};

pub type Monomial = Vec<u32>;

/// Polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(R::one(), nvars)
    }

    /// The `i`-th coordinate function.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(R::one(), e)
    }

    pub fn monomial(c: R, exps: Monomial) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` when every term has degree `d`; zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.from_i64_like(e[var] as i64) * c.clone());
        }
        out
    }

    /// Substitute a constant for one variable; the variable count is kept.
    pub fn specialize(&self, var: usize, value: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[var] {
                t = t * value.clone();
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, t);
        }
        out
    }

    /// Univariate polynomial in `var`, when no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly<R>> {
        let mut coeffs = vec![R::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone())),
        )
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Leading term in lexicographic order.
    pub fn lex_leading(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next_back()
    }

    pub fn to_string_with(&self, vars: &[&str], fmt_coeff: impl Fn(&R) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = vars
                        .get(i)
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| format!("x{i}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let cs = fmt_coeff(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<F: Field> MultiPoly<F> {
    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.lex_leading()?;
        let dinv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.lex_leading() {
            if e.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Monomial = e.iter().zip(de).map(|(a, b)| a - b).collect();
            let qc = c.clone() * dinv.clone();
            let t = Self::monomial(qc, qe);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl MultiPoly<BigRational> {
    /// Parse a polynomial in the named variables, e.g. `"x^2 - 3/2*y*z + 1"`.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self, ArithError> {
        let mut p = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            vars,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(ArithError::Parse(format!(
                "unexpected input at position {} in {s:?}",
                p.pos
            )));
        }
        Ok(out)
    }

    /// Reduction modulo `p`; `None` if some denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<MultiPoly<Fp>> {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            terms.push((e.clone(), Fp::from_rational(c, p)?));
        }
        Some(MultiPoly::from_terms(self.nvars, terms))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

type Q = MultiPoly<BigRational>;

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Q, ArithError> {
        let n = self.vars.len();
        let mut acc = Q::zero(n);
        let mut sign = 1;
        if let Some(c @ ('+' | '-')) = self.peek() {
            sign = if c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Q, ArithError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c.is_alphanumeric() || c == '(' => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Q, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| ArithError::Parse("bad exponent".into()))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Q, ArithError> {
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(ArithError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                // a '/' directly followed by digits is part of the number
                if self.peek() == Some('/')
                    && self
                        .chars
                        .get(self.pos + 1)
                        .is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(Q::constant(parse_rational(&text)?, n))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                // longest variable-name prefix, so "xy" reads as x*y when both are variables
                let mut rest = name.as_str();
                let mut acc = Q::one(n);
                while !rest.is_empty() {
                    let hit = self
                        .vars
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| rest.starts_with(**v))
                        .max_by_key(|(_, v)| v.len());
                    match hit {
                        Some((i, v)) => {
                            acc = &acc * &Q::var(i, n);
                            rest = &rest[v.len()..];
                        }
                        None => {
                            return Err(ArithError::Parse(format!("unknown variable in {name:?}")))
                        }
                    }
                }
                Ok(acc)
            }
            other => Err(ArithError::Parse(format!("unexpected {other:?}"))),
        }
    }
}

impl<R: Ring> Add for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn add(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<R: Ring> Sub for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn sub(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<R: Ring> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Mul for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn mul(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        let mut out = MultiPoly::zero(self.nvars.max(rhs.nvars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Ring> Zero for MultiPoly<R> {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> Add for MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn add(self, rhs: Self) -> Self {
        let mut out = if self.nvars >= rhs.nvars {
            self
        } else {
            MultiPoly {
                nvars: rhs.nvars,
                terms: self.terms,
            }
        };
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl fmt::Display for MultiPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs, format_rational))
    }
}

impl fmt::Display for MultiPoly<Fp> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(
            f,
            "{}",
            self.to_string_with(&refs, |c| c.value().to_string())
        )
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `x, y, z` for up to three variables, `x0, x1, ...` beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}
