//! Rational helpers: p-adic valuations, primality and the `"num/den"`
//! text form used by every serialized report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ArithError;

/// `ord_p(n)` for a nonzero integer.
pub fn ord_p_int(n: &BigInt, p: &BigInt) -> Result<u64, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

/// `ord_p(x) = ord_p(numerator) - ord_p(denominator)`.
pub fn padic_valuation(x: &BigRational, p: &BigInt) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let num = ord_p_int(x.numer(), p)? as i64;
    let den = ord_p_int(x.denom(), p)? as i64;
    Ok(num - den)
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary integers; inputs at or above `2^64` are rejected.
pub fn is_prime(n: &BigInt) -> Result<bool, ArithError> {
    match n.to_u64() {
        Some(v) => Ok(is_prime_u64(v)),
        None if n.is_negative() => Ok(false),
        None => Err(ArithError::NotPrime(format!(
            "{n} is outside the supported range (< 2^64)"
        ))),
    }
}

/// Write `n = p^a` with `p` prime, if possible.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    // largest exponent first so that p comes out prime
    for a in (1..=63u32).rev() {
        let r = integer_root(n, a);
        if r >= 2 && r.checked_pow(a) == Some(n) && is_prime_u64(r) {
            return Some((r, a));
        }
    }
    None
}

fn integer_root(n: u64, a: u32) -> u64 {
    if a == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / a as f64).round() as u64;
    while r > 0 && r.checked_pow(a).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(a).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"n"`, `"n/d"` or a decimal-free signed integer pair.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::Parse(format!("invalid rational '{s}'"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ArithError::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Least common multiple of a list of positive integers.
pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}
