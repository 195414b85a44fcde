//! Exact real-root counting with Sturm sequences, at endpoints in `Q(sqrt d)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{ArithError, QPoly};

/// A real number `a + b * sqrt(d)` with rational `a`, `b` and integer `d >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    Rational(BigRational),
    Surd {
        a: BigRational,
        b: BigRational,
        d: BigInt,
    },
}

impl Endpoint {
    /// `sign * 2 * sqrt(q)`, written as `sign * sqrt(4q)`.
    pub fn two_sqrt(q: &BigInt, negative: bool) -> Self {
        let b = if negative { -1 } else { 1 };
        Endpoint::Surd {
            a: BigRational::zero(),
            b: BigRational::from_integer(BigInt::from(b)),
            d: q * 4u32,
        }
    }

    fn parts(&self) -> (BigRational, BigRational, BigInt) {
        match self {
            Endpoint::Rational(r) => (r.clone(), BigRational::zero(), BigInt::zero()),
            Endpoint::Surd { a, b, d } => (a.clone(), b.clone(), d.clone()),
        }
    }

    /// Approximate value, for diagnostics only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (a, b, d) = self.parts();
        a.to_f64().unwrap_or(f64::NAN)
            + b.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// Sign of `u + v sqrt(d)`.
fn surd_sign(u: &BigRational, v: &BigRational, d: &BigInt) -> Ordering {
    let su = u.cmp(&BigRational::zero());
    if v.is_zero() || d.is_zero() {
        return su;
    }
    let sv = v.cmp(&BigRational::zero());
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // opposite signs: compare u^2 with v^2 d
    let lhs = u * u;
    let rhs = v * v * BigRational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `f` at the endpoint.
pub fn sign_at(f: &QPoly, x: &Endpoint) -> Ordering {
    let (a, b, d) = x.parts();
    let dr = BigRational::from_integer(d.clone());
    let mut u = BigRational::zero();
    let mut v = BigRational::zero();
    for c in f.coeffs().iter().rev() {
        let nu = &u * &a + &v * &b * &dr + c;
        let nv = &u * &b + &v * &a;
        u = nu;
        v = nv;
    }
    surd_sign(&u, &v, &d)
}

pub fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn variations(seq: &[QPoly], x: &Endpoint) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| sign_at(p, x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree `f` in the closed interval `[a, b]`.
pub fn sturm_count(f: &QPoly, a: &Endpoint, b: &Endpoint) -> Result<usize, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if !f.is_squarefree() {
        return Err(ArithError::NotSquarefree);
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    let seq = sturm_sequence(f);
    let va = variations(&seq, a);
    let vb = variations(&seq, b);
    if va < vb {
        return Ok(0);
    }
    let at_a = usize::from(sign_at(f, a) == Ordering::Equal);
    Ok(va - vb + at_a)
}

/// Whether `f` is negative, zero or positive at a rational point.
pub fn rational_sign(f: &QPoly, x: &BigRational) -> Ordering {
    let v = f.eval(x);
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}
