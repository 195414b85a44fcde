//! q-Weil polynomials, Tate twists, and Newton/Hodge polygons.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use phantom_arith::hull::{hull_slopes, lower_convex_hull};
use phantom_arith::rational::{is_prime_u64, prime_power_decomposition};
use phantom_arith::sturm::{sturm_count, Endpoint};
use phantom_arith::{factor_over_q, padic_valuation, rat_int, QPoly, Rational};

use crate::{CoreError, Result};

/// `q = p^a` with `p` prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub a: u32,
    pub q: BigInt,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        let (p, a) =
            prime_power_decomposition(q).ok_or_else(|| CoreError::NotPrimePower(q.to_string()))?;
        Ok(PrimePower {
            p,
            a,
            q: BigInt::from(q),
        })
    }

    pub fn from_parts(p: u64, a: u32) -> Result<Self> {
        if !is_prime_u64(p) || a == 0 {
            return Err(CoreError::NotPrimePower(format!("{p}^{a}")));
        }
        Ok(PrimePower {
            p,
            a,
            q: BigInt::from(p).pow(a),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let q: u64 = s
            .trim()
            .parse()
            .map_err(|_| CoreError::NotPrimePower(s.to_string()))?;
        Self::new(q)
    }

    pub fn q_rational(&self) -> Rational {
        rat_int(self.q.clone())
    }

    /// `q^k` as a prime power (`k >= 1`).
    pub fn power(&self, k: u32) -> Self {
        PrimePower {
            p: self.p,
            a: self.a * k,
            q: self.q.pow(k),
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Outcome of the Weil test on one irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorVerdict {
    pub factor: QPoly,
    pub multiplicity: u32,
    pub ok: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilCertificate {
    pub is_weil: bool,
    pub factors: Vec<FactorVerdict>,
}

fn check_monic_integral(f: &QPoly) -> Result<()> {
    if f.is_zero() || !f.is_monic() {
        return Err(CoreError::NotMonic);
    }
    if !f.is_integral() {
        return Err(CoreError::NotIntegral);
    }
    Ok(())
}

/// Decide whether every complex root of `f` has absolute value `sqrt(q)`.
pub fn is_weil_polynomial(f: &QPoly, q: &PrimePower) -> Result<WeilCertificate> {
    weil_certificate(f, &q.q)
}

/// The Weil test for an arbitrary positive integer `q`.
pub(crate) fn weil_certificate(f: &QPoly, q: &BigInt) -> Result<WeilCertificate> {
    check_monic_integral(f)?;
    if f.coeff(0).is_zero() {
        return Err(CoreError::ZeroConstantTerm);
    }
    let qr = rat_int(q.clone());
    let fac = factor_over_q(f)?;
    let mut factors = Vec::new();
    for (m, mult) in fac.factors {
        let (ok, reason) = check_irreducible_factor(&m, q, &qr);
        factors.push(FactorVerdict {
            factor: m,
            multiplicity: mult,
            ok,
            reason,
        });
    }
    Ok(WeilCertificate {
        is_weil: factors.iter().all(|v| v.ok),
        factors,
    })
}

fn check_irreducible_factor(m: &QPoly, q: &BigInt, qr: &Rational) -> (bool, String) {
    let n = m.deg();
    if n == 1 {
        let c = -m.coeff(0);
        let ok = &c * &c == *qr;
        return (
            ok,
            format!(
                "linear factor, root {c}, root^2 {} q",
                if ok { "=" } else { "!=" }
            ),
        );
    }
    if n == 2 && m.coeff(1).is_zero() && m.coeff(0) == -qr.clone() {
        return (true, "T^2 - q: real roots +-sqrt(q)".into());
    }
    if n % 2 == 1 {
        return (false, "odd degree without a root +-sqrt(q)".into());
    }
    let k = n / 2;
    if m.coeff(0) != rat_int(q.pow(k as u32)) {
        return (false, format!("constant term {} is not q^{k}", m.coeff(0)));
    }
    // roots must be stable under alpha -> q/alpha: a_{k-j} = q^j a_{k+j}
    for j in 1..=k {
        if m.coeff(k - j) != rat_int(q.pow(j as u32)) * m.coeff(k + j) {
            return (false, "roots are not stable under alpha -> q/alpha".into());
        }
    }
    let h = real_weil_transform(m, qr);
    let hs = h.squarefree_part();
    let lo = Endpoint::two_sqrt(q, true);
    let hi = Endpoint::two_sqrt(q, false);
    match sturm_count(&hs, &lo, &hi) {
        Ok(c) if c == hs.deg() => (
            true,
            format!("all {} real-Weil roots in [-2 sqrt q, 2 sqrt q]", hs.deg()),
        ),
        Ok(c) => (
            false,
            format!(
                "{c} of {} real-Weil roots in [-2 sqrt q, 2 sqrt q]",
                hs.deg()
            ),
        ),
        Err(e) => (false, e.to_string()),
    }
}

/// `h` with `m(T) = T^k h(T + q/T)`, for `m` of degree `2k` with the reciprocal symmetry.
pub fn real_weil_transform(m: &QPoly, q: &Rational) -> QPoly {
    let k = m.deg() / 2;
    // P_0 = 2, P_1 = y, P_j = y P_{j-1} - q P_{j-2}: T^j + (q/T)^j = P_j(T + q/T)
    let y = QPoly::x();
    let mut ps: Vec<QPoly> = vec![QPoly::constant(rat_int(2)), y.clone()];
    for j in 2..=k {
        let next = &(&y * &ps[j - 1]) - &ps[j - 2].scale(q);
        ps.push(next);
    }
    let mut h = QPoly::constant(m.coeff(k));
    for (j, pj) in ps.iter().enumerate().take(k + 1).skip(1) {
        h = &h + &pj.scale(&m.coeff(k + j));
    }
    h
}

/// A monic integer polynomial certified to be q-Weil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilPolynomial {
    poly: QPoly,
    q: PrimePower,
}

impl WeilPolynomial {
    pub fn new(poly: QPoly, q: PrimePower) -> Result<Self> {
        let cert = is_weil_polynomial(&poly, &q)?;
        if !cert.is_weil {
            let bad = cert
                .factors
                .iter()
                .find(|v| !v.ok)
                .expect("a failing factor");
            return Err(CoreError::NotWeil(format!(
                "{}: {}",
                bad.factor, bad.reason
            )));
        }
        Ok(WeilPolynomial { poly, q })
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn q(&self) -> &PrimePower {
        &self.q
    }
}

/// Divide every root by `q^n` (`n` may be negative).
pub fn tate_twist(f: &QPoly, n: i64, q: &PrimePower) -> Result<QPoly> {
    if f.is_zero() || !f.is_monic() {
        return Err(CoreError::NotMonic);
    }
    let d = f.deg();
    let qr = q.q_rational();
    let coeffs = (0..=d)
        .map(|k| {
            let e = n * (d - k) as i64;
            let s = pow_signed(&qr, e);
            f.coeff(k) / s
        })
        .collect();
    Ok(QPoly::new(coeffs))
}

fn pow_signed(x: &Rational, e: i64) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// Monic with integer coefficients, so every root is an algebraic integer.
pub fn is_entire(f: &QPoly) -> Result<bool> {
    if f.is_zero() || !f.is_monic() {
        return Err(CoreError::NotMonic);
    }
    Ok(f.is_integral())
}

/// Roots of absolute value `q^{w/2}` and the dual (roots `q^w / alpha`) entire.
pub fn is_effective_weight(f: &QPoly, q: &PrimePower, w: u32) -> Result<bool> {
    check_monic_integral(f)?;
    if f.coeff(0).is_zero() {
        return Err(CoreError::ZeroConstantTerm);
    }
    if w == 0 {
        return Err(CoreError::Invalid("weight must be positive".into()));
    }
    let qw = q.q.pow(w);
    if !weil_certificate(f, &qw)?.is_weil {
        return Ok(false);
    }
    Ok(dual_polynomial(f, &rat_int(qw)).is_integral())
}

/// Monic polynomial whose roots are `c / alpha` for the roots `alpha` of `f`.
pub fn dual_polynomial(f: &QPoly, c: &Rational) -> QPoly {
    let d = f.deg();
    let a0 = f.coeff(0);
    // T^d f(c/T) / f(0): coefficient of T^j is a_{d-j} c^{d-j} / a_0
    let coeffs = (0..=d)
        .map(|j| f.coeff(d - j) * pow_signed(c, (d - j) as i64) / &a0)
        .collect();
    QPoly::new(coeffs)
}

/// Exact piecewise-linear convex chain starting at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<(Rational, Rational)>,
    /// `(slope, horizontal length)`, slopes strictly increasing.
    pub slopes: Vec<(Rational, Rational)>,
}

impl Polygon {
    /// Build from a multiset of slopes; equal slopes merge, zero lengths vanish.
    pub fn from_slopes(slopes: &[(Rational, Rational)]) -> Self {
        let mut s: Vec<(Rational, Rational)> = slopes
            .iter()
            .filter(|(_, l)| l.is_positive())
            .cloned()
            .collect();
        s.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (sl, len) in s {
            match merged.last_mut() {
                Some(last) if last.0 == sl => last.1 += len,
                _ => merged.push((sl, len)),
            }
        }
        let mut vertices = vec![(Rational::zero(), Rational::zero())];
        for (sl, len) in &merged {
            let (x, y) = vertices.last().expect("nonempty").clone();
            vertices.push((&x + len, y + sl * len));
        }
        Polygon {
            vertices,
            slopes: merged,
        }
    }

    pub fn length(&self) -> Rational {
        self.vertices.last().expect("nonempty").0.clone()
    }

    /// Height at `x` in `[0, length]`.
    pub fn height_at(&self, x: &Rational) -> Rational {
        for w in self.vertices.windows(2) {
            if &w[0].0 <= x && x <= &w[1].0 {
                let t = (x - &w[0].0) / (&w[1].0 - &w[0].0);
                return &w[0].1 + t * (&w[1].1 - &w[0].1);
            }
        }
        self.vertices.last().expect("nonempty").1.clone()
    }

    /// Slope list with multiplicity expanded (integer lengths only).
    pub fn slope_multiset(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (s, l) in &self.slopes {
            let n = l.to_integer().to_usize().unwrap_or(0);
            out.extend(std::iter::repeat_n(s.clone(), n));
        }
        out
    }
}

/// Hodge numbers `h[j] = h^{r-j,j}` in degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeNumbers {
    pub r: usize,
    pub h: Vec<u64>,
}

impl HodgeNumbers {
    pub fn new(h: Vec<u64>) -> Result<Self> {
        if h.is_empty() {
            return Err(CoreError::InvalidHodge("empty Hodge vector".into()));
        }
        Ok(HodgeNumbers { r: h.len() - 1, h })
    }

    pub fn with_degree(r: usize, h: Vec<u64>) -> Result<Self> {
        if h.len() != r + 1 {
            return Err(CoreError::InvalidHodge(format!(
                "degree {r} needs {} Hodge numbers, got {}",
                r + 1,
                h.len()
            )));
        }
        Ok(HodgeNumbers { r, h })
    }

    /// `h^{p,q} = h^{q,p}`; asymmetric data is allowed but flagged by callers.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.r).all(|j| self.h[j] == self.h[self.r - j])
    }

    pub fn total(&self) -> u64 {
        self.h.iter().sum()
    }
}

/// Normalized Newton polygon: root valuations (with `v(q) = 1`) as ascending slopes.
pub fn newton_polygon(f: &QPoly, q: &PrimePower) -> Result<Polygon> {
    if f.is_zero() {
        return Err(CoreError::Arith(phantom_arith::ArithError::ZeroPolynomial));
    }
    if f.coeff(0).is_zero() {
        return Err(CoreError::ZeroConstantTerm);
    }
    let p = BigInt::from(q.p);
    let mut points = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let v = padic_valuation(c, &p)?;
            points.push((rat_int(i as i64), rat_int(v)));
        }
    }
    let hull = lower_convex_hull(&points)?;
    let a = rat_int(q.a as i64);
    let slopes: Vec<(Rational, Rational)> = hull
        .windows(2)
        .zip(hull_slopes(&hull))
        .map(|(w, s)| (-s / &a, &w[1].0 - &w[0].0))
        .collect();
    Ok(Polygon::from_slopes(&slopes))
}

/// Slopes `j` with multiplicity `h^{r-j,j}`.
pub fn hodge_polygon(h: &HodgeNumbers) -> Polygon {
    let slopes: Vec<(Rational, Rational)> =
        h.h.iter()
            .enumerate()
            .map(|(j, &m)| (rat_int(j as i64), rat_int(m as i64)))
            .collect();
    Polygon::from_slopes(&slopes)
}

fn check_lengths(np: &Polygon, hp: &Polygon) -> Result<()> {
    if np.length() != hp.length() {
        return Err(CoreError::LengthMismatch(
            np.length().to_string(),
            hp.length().to_string(),
        ));
    }
    Ok(())
}

/// Newton polygon on or above the Hodge polygon at every vertex abscissa of either.
pub fn newton_over_hodge(np: &Polygon, hp: &Polygon) -> Result<bool> {
    check_lengths(np, hp)?;
    let xs = np.vertices.iter().chain(&hp.vertices).map(|v| &v.0);
    Ok(xs.into_iter().all(|x| np.height_at(x) >= hp.height_at(x)))
}

/// Identical vertex chains.
pub fn is_ordinary_polygon(np: &Polygon, hp: &Polygon) -> Result<bool> {
    check_lengths(np, hp)?;
    Ok(np.vertices == hp.vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use phantom_arith::{parse_poly, rat};

    fn poly(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn weil(s: &str, q: u64) -> bool {
        is_weil_polynomial(&poly(s), &pp(q)).unwrap().is_weil
    }

    #[test]
    fn weil_examples() {
        assert!(weil("T^2 - T + 5", 5));
        assert!(weil("T - 2", 4));
        assert!(!weil("T^2 - 5*T + 5", 5));
        assert!(weil("T^2 - 3", 3));
        assert!(weil("T^2 - 2*T + 8", 8));
        assert!(weil("(T^2 - T + 5)^2*(T^2 + 5)", 5));
        assert!(!weil("T - 3", 4));
        // 2 sqrt(q) = 4 for q = 4: T^2 - 4T + 4 = (T - 2)^2 is Weil; T^2 - 5T + 4 is not
        assert!(weil("T^2 - 4*T + 4", 4));
        assert!(!weil("T^2 - 5*T + 4", 4));
    }

    #[test]
    fn weil_errors() {
        assert_eq!(
            is_weil_polynomial(&poly("2*T - 1"), &pp(5)),
            Err(CoreError::NotMonic)
        );
        assert_eq!(
            is_weil_polynomial(&poly("T^2 + T"), &pp(5)),
            Err(CoreError::ZeroConstantTerm)
        );
        assert_eq!(
            is_weil_polynomial(&poly("T - 1/2"), &pp(5)),
            Err(CoreError::NotIntegral)
        );
        assert!(PrimePower::new(12).is_err());
        assert_eq!(PrimePower::new(8).unwrap().p, 2);
    }

    #[test]
    fn real_weil_transform_of_quartic() {
        // T^4 - 2T^3 + 6T^2 - 18T + 81 at q = 9 is not reciprocal; build one that is
        let q = rat(3, 1);
        let m = poly("T^4 + T^3 + 2*T^2 + 3*T + 9");
        let h = real_weil_transform(&m, &q);
        // m = T^2 h(T + 3/T) with h = y^2 + y - 4
        assert_eq!(h, poly("T^2 + T - 4"));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(
            tate_twist(&poly("T^2 - 10*T + 25"), 1, &pp(5)).unwrap(),
            poly("T^2 - 2*T + 1")
        );
        let f = poly("T^2 - 2*T + 8");
        assert_eq!(tate_twist(&f, 0, &pp(8)).unwrap(), f);
        let t = tate_twist(&f, 1, &pp(8)).unwrap();
        assert_eq!(t, poly("T^2 - 1/4*T + 1/8"));
        assert_eq!(tate_twist(&t, -1, &pp(8)).unwrap(), f);
    }

    #[test]
    fn entire_and_effective() {
        assert!(is_entire(&poly("T^2 - 2*T + 8")).unwrap());
        assert!(!is_entire(&poly("T^2 - 1/4*T + 1/8")).unwrap());
        assert!(is_entire(&poly("T")).unwrap());
        assert!(is_effective_weight(&poly("T^2 - T + 5"), &pp(5), 1).unwrap());
        assert!(is_effective_weight(&poly("T^2 - 2*T + 8"), &pp(8), 1).unwrap());
        assert!(!is_effective_weight(&poly("(T - 1)*(T - 25)"), &pp(5), 1).unwrap());
        // weight 2: roots of absolute value 5
        assert!(is_effective_weight(&poly("T^2 - 6*T + 25"), &pp(5), 2).unwrap());
    }

    fn slopes(p: &Polygon) -> Vec<(Rational, Rational)> {
        p.slopes.clone()
    }

    #[test]
    fn newton_examples() {
        let np = newton_polygon(&poly("T^2 - 2*T + 8"), &pp(8)).unwrap();
        assert_eq!(
            slopes(&np),
            vec![(rat(1, 3), rat(1, 1)), (rat(2, 3), rat(1, 1))]
        );
        let np = newton_polygon(&poly("T^2 - T + 5"), &pp(5)).unwrap();
        assert_eq!(
            slopes(&np),
            vec![(rat(0, 1), rat(1, 1)), (rat(1, 1), rat(1, 1))]
        );
        let np = newton_polygon(&poly("T^2 - 9"), &pp(9)).unwrap();
        assert_eq!(slopes(&np), vec![(rat(1, 2), rat(2, 1))]);
    }

    #[test]
    fn hodge_examples() {
        let hp = hodge_polygon(&HodgeNumbers::new(vec![0, 5, 5, 0]).unwrap());
        assert_eq!(
            slopes(&hp),
            vec![(rat(1, 1), rat(5, 1)), (rat(2, 1), rat(5, 1))]
        );
        assert_eq!(
            hp.vertices,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(5, 1), rat(5, 1)),
                (rat(10, 1), rat(15, 1))
            ]
        );
        let hp = hodge_polygon(&HodgeNumbers::new(vec![1, 0, 1]).unwrap());
        assert_eq!(
            slopes(&hp),
            vec![(rat(0, 1), rat(1, 1)), (rat(2, 1), rat(1, 1))]
        );
        assert!(!HodgeNumbers::new(vec![1, 2]).unwrap().is_symmetric());
    }

    #[test]
    fn comparison_examples() {
        let np = Polygon::from_slopes(&[(rat(1, 3), rat(1, 1)), (rat(2, 3), rat(1, 1))]);
        let hp = Polygon::from_slopes(&[(rat(0, 1), rat(1, 1)), (rat(1, 1), rat(1, 1))]);
        assert!(newton_over_hodge(&np, &hp).unwrap());
        assert!(!is_ordinary_polygon(&np, &hp).unwrap());
        assert!(newton_over_hodge(&hp, &hp).unwrap());
        assert!(is_ordinary_polygon(&hp, &hp).unwrap());
        let half = Polygon::from_slopes(&[(rat(1, 2), rat(2, 1))]);
        assert!(!newton_over_hodge(&hp, &half).unwrap());
        let short = Polygon::from_slopes(&[(rat(0, 1), rat(1, 1))]);
        assert!(matches!(
            newton_over_hodge(&short, &hp),
            Err(CoreError::LengthMismatch(..))
        ));
        let five = Polygon::from_slopes(&[(rat(0, 1), rat(5, 1)), (rat(1, 1), rat(5, 1))]);
        let h55 = hodge_polygon(&HodgeNumbers::new(vec![5, 5]).unwrap());
        assert!(is_ordinary_polygon(&five, &h55).unwrap());
    }

    #[test]
    fn dual_flips_slopes() {
        let f = poly("T^2 - 2*T + 8");
        let d = dual_polynomial(&f, &rat(8, 1));
        assert_eq!(d, f);
        let g = poly("(T - 1)*(T - 25)");
        assert_eq!(dual_polynomial(&g, &rat(25, 1)), g);
    }
}
