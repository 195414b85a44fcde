//! Scalar traits shared by every generic container in the crate.
//!
//! Polynomials and matrices are written once against [`Ring`] / [`Field`]
//! and instantiated over exact rationals, runtime prime fields and (for
//! numerical cross-checks only) `f64`/`f32`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Embed `n` using `self` as a template for any runtime context
    /// (the modulus of an `Fp`, say).
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(n)
    }
}

/// A commutative ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    fn inverse(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

macro_rules! float_field {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl Field for $t {
            fn inverse(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }
        }
    };
}

float_field!(f64);
float_field!(f32);

/// Element of the prime field `Z/pZ` with the modulus carried at runtime.
///
/// Values produced by `Zero::zero()`, `One::one()` or [`Ring::from_i64`]
/// have no modulus attached yet ("unbound"); they adopt the modulus of the
/// first bound operand they meet. Moduli must stay below 2^62.
#[derive(Clone, Copy)]
pub struct Fp {
    raw: i128,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        Fp {
            raw: (value as i128).rem_euclid(p as i128),
            modulus: p,
        }
    }

    pub fn from_bigint(value: &BigInt, p: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(p));
        let v: u64 = r.try_into().expect("reduced residue fits in u64");
        Fp {
            raw: v as i128,
            modulus: p,
        }
    }

    /// Reduce a rational number; `None` when `p` divides the denominator.
    pub fn from_rational(value: &BigRational, p: u64) -> Option<Self> {
        let den = Fp::from_bigint(value.denom(), p);
        if den.is_zero() {
            return None;
        }
        Some(Fp::from_bigint(value.numer(), p) * den.inverse()?)
    }

    /// The modulus, or 0 for an unbound constant.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical residue in `[0, p)`. Unbound constants must be nonnegative.
    pub fn value(&self) -> u64 {
        assert!(self.raw >= 0, "negative unbound Fp constant has no residue");
        self.raw as u64
    }

    /// Attach a modulus to a possibly unbound value.
    pub fn bind(self, p: u64) -> Self {
        if self.modulus == 0 {
            Fp {
                raw: self.raw.rem_euclid(p as i128),
                modulus: p,
            }
        } else {
            debug_assert_eq!(self.modulus, p, "mixing elements of different prime fields");
            self
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.from_i64_like(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn combine(a: &Fp, b: &Fp) -> u64 {
        match (a.modulus, b.modulus) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                debug_assert_eq!(m, n, "mixing elements of different prime fields");
                m
            }
        }
    }

    fn reduce(raw: i128, m: u64) -> Fp {
        if m == 0 {
            Fp { raw, modulus: 0 }
        } else {
            Fp {
                raw: raw.rem_euclid(m as i128),
                modulus: m,
            }
        }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.raw)
        } else {
            write!(f, "{} (mod {})", self.raw, self.modulus)
        }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.raw == other.raw,
            (0, m) => self.raw.rem_euclid(m as i128) == other.raw,
            (m, 0) => self.raw == other.raw.rem_euclid(m as i128),
            _ => self.raw == other.raw,
        }
    }
}

impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::combine(&self, &rhs);
        Fp::reduce(self.raw + rhs.raw, m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::combine(&self, &rhs);
        Fp::reduce(self.raw - rhs.raw, m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::combine(&self, &rhs);
        Fp::reduce(self.raw * rhs.raw, m)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::reduce(-self.raw, self.modulus)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        let m = Fp::combine(&self, &rhs);
        let inv = rhs
            .bind_or_keep(m)
            .inverse()
            .expect("division by zero in Fp");
        self * inv
    }
}

impl Fp {
    fn bind_or_keep(self, m: u64) -> Fp {
        if m == 0 {
            self
        } else {
            self.bind(m)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { raw: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.raw == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { raw: 1, modulus: 0 }
    }
}

impl Ring for Fp {
    fn from_i64(n: i64) -> Self {
        Fp {
            raw: n as i128,
            modulus: 0,
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::reduce(n as i128, self.modulus)
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.modulus == 0 {
            return match self.raw {
                1 | -1 => Some(*self),
                _ => None,
            };
        }
        if self.raw == 0 {
            return None;
        }
        // extended Euclid on (raw, m)
        let m = self.modulus as i128;
        let (mut r0, mut r1) = (m, self.raw);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return None;
        }
        Some(Fp::reduce(s0, self.modulus))
    }
}

/// Shorthand constructor for rationals from small integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Absolute value helper that works for all signed exact types.
pub fn abs_rat(x: &BigRational) -> BigRational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic_and_inverse() {
        let a = Fp::new(3, 7);
        let b = Fp::new(5, 7);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!(a.inverse().unwrap(), b);
        assert_eq!((a / b).value(), 2);
        assert!(Fp::new(0, 7).inverse().is_none());
    }

    #[test]
    fn unbound_constants_adopt_modulus() {
        let one = Fp::one();
        let x = Fp::new(6, 7);
        assert_eq!((one + x).value(), 0);
        assert_eq!((x - one - one).modulus(), 7);
        assert_eq!(-Fp::one(), Fp::new(6, 7));
        assert!(Fp::zero().is_zero());
        assert_eq!(Fp::from_i64(9), Fp::new(2, 7));
    }

    #[test]
    fn fp_from_rational() {
        let half = rat(1, 2);
        assert_eq!(Fp::from_rational(&half, 7).unwrap(), Fp::new(4, 7));
        assert!(Fp::from_rational(&half, 2).is_none());
    }
}
