//! Dense univariate polynomials over any [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::format_rational;
use crate::scalar::{Field, Fp, Ring};
use crate::ArithError;

/// Dense polynomial; `coeffs[i]` is the coefficient of `T^i`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![R::one()],
        }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * T^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The indeterminate `T`.
    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![R::zero(), R::one()],
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate at an element of a ring receiving the coefficients through `embed`.
    pub fn eval_with<S, F>(&self, x: &S, embed: F) -> S
    where
        S: Clone + Add<Output = S> + Mul<Output = S>,
        F: Fn(&R) -> S,
    {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            panic!("eval_with on the zero polynomial needs an explicit zero");
        };
        let mut acc = embed(first);
        for c in it {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.from_i64_like(i as i64) * c.clone())
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(T))`
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// `T^deg * self(1/T)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Canonical text form with descending exponents, e.g. `T^2 - 2*T + 8`.
    pub fn to_string_with<F: Fn(&R) -> (bool, String)>(&self, var: &str, fmt_coeff: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = fmt_coeff(c);
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = mag == "1";
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !unit {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push('^');
                        out.push_str(&i.to_string());
                    }
                }
            }
        }
        out
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d
            .leading()
            .expect("division by the zero polynomial")
            .clone();
        let inv = dl
            .inverse()
            .expect("leading coefficient must be invertible");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inverse().expect("leading coefficient must be invertible");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inverse().expect("field");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Modular exponentiation `self^e mod m`.
    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        let mut result = Self::one().rem(m);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = (&result * &result).rem(m);
            if e.bit(i) {
                result = (&result * &base).rem(m);
            }
        }
        result
    }
}

impl UniPoly<BigRational> {
    /// Squarefree part over a field of characteristic zero.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Yun's squarefree decomposition: `self = lc * prod a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.deg() == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if all are integers.
    pub fn to_integer(&self) -> Option<UniPoly<BigInt>> {
        self.is_integral().then(|| self.map(|c| c.to_integer()))
    }

    /// `(d, g)` with `g = d * self` primitive-integral up to content and `d > 0`.
    pub fn clear_denominators(&self) -> (BigInt, UniPoly<BigInt>) {
        let d = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self.map(|c| (c * BigRational::from_integer(d.clone())).to_integer());
        (d, g)
    }

    pub fn reduce_mod(&self, p: u64) -> Option<UniPoly<Fp>> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(Fp::from_rational(c, p)?);
        }
        Some(UniPoly::new(v))
    }

    pub fn parse(s: &str) -> Result<Self, ArithError> {
        parse_poly(s)
    }
}

impl UniPoly<BigInt> {
    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading().is_some_and(|l| l.is_negative()) {
            -g
        } else {
            g
        }
    }

    /// Divide by the content (sign chosen so the leading coefficient is positive).
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.map(|a| a / &c)
    }

    pub fn to_rational(&self) -> UniPoly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn reduce_mod(&self, p: u64) -> UniPoly<Fp> {
        self.map(|c| Fp::from_bigint(c, p))
    }

    /// Exact division over Z, `None` if not divisible.
    pub fn div_exact_int(&self, d: &Self) -> Option<Self> {
        let q = self.to_rational().div_exact(&d.to_rational())?;
        q.to_integer()
    }

    /// Max-norm of the coefficients.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl UniPoly<Fp> {
    /// Attach the modulus `p` to every coefficient.
    pub fn bind(&self, p: u64) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.bind(p)).collect())
    }

    /// Lift residues to the symmetric range `(-p/2, p/2]`.
    pub fn lift_symmetric(&self) -> UniPoly<BigInt> {
        self.map(|c| {
            let p = c.modulus();
            let v = c.value();
            if p != 0 && v > p / 2 {
                BigInt::from(v) - BigInt::from(p)
            } else {
                BigInt::from(v)
            }
        })
    }
}

impl<R: Ring> Add for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn add(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn sub(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Mul for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn mul(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<R: Ring> Neg for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for UniPoly<R> {
            type Output = UniPoly<R>;
            fn $m(self, rhs: UniPoly<R>) -> UniPoly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for UniPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_string_with("T", |c| (c.is_negative(), format_rational(&c.abs())));
        f.write_str(&s)
    }
}

impl fmt::Display for UniPoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_string_with("T", |c| (c.is_negative(), c.abs().to_string()));
        f.write_str(&s)
    }
}

impl fmt::Display for UniPoly<Fp> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_string_with("T", |c| (false, c.to_string()));
        f.write_str(&s)
    }
}

impl<R: fmt::Debug> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Parse the shared polynomial grammar: signed integer or rational
/// coefficients, the variable `T` (or `x`), `*` between coefficient and
/// variable, `^` for exponents. Parenthesised factors with an optional
/// `^k` are accepted as a product, e.g. `(T^2 - T + 5)^2*(T^2 + 5)`.
pub fn parse_poly(s: &str) -> Result<UniPoly<BigRational>, ArithError> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if toks.is_empty() {
        return Err(ArithError::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let out = p.sum()?;
    if p.pos != toks.len() {
        return Err(ArithError::Parse(format!(
            "unexpected '{}' at position {} in '{s}'",
            toks[p.pos], p.pos
        )));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{what} at position {}", self.pos))
    }

    fn sum(&mut self) -> Result<UniPoly<BigRational>, ArithError> {
        let mut acc = UniPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<UniPoly<BigRational>, ArithError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // implicit multiplication: 2T, 3(T+1), (..)(..)
                Some(c) if c == '(' || is_var(c) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UniPoly<BigRational>, ArithError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if is_var(c) => {
                self.pos += 1;
                UniPoly::x()
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    UniPoly::constant(BigRational::new(n, d))
                } else {
                    UniPoly::constant(BigRational::from_integer(n))
                }
            }
            _ => return Err(self.err("expected a term")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt, ArithError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad number"))
    }
}

fn is_var(c: char) -> bool {
    matches!(c, 'T' | 't' | 'x' | 'X')
}

/// Build a rational polynomial from small integer coefficients (ascending).
pub fn qpoly(coeffs: &[i64]) -> UniPoly<BigRational> {
    UniPoly::new(
        coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect(),
    )
}

/// Build an integer polynomial from small coefficients (ascending).
pub fn zpoly(coeffs: &[i64]) -> UniPoly<BigInt> {
    UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
