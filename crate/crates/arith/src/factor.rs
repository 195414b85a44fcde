//! Factorization over Q: squarefree decomposition, modular factorization,
//! quadratic Hensel lifting to a Mignotte-type bound, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fp_factor::factor_mod_p;
use crate::rational::is_prime_u64;
use crate::scalar::Fp;
use crate::{ArithError, FpPoly, QPoly, ZPoly};

/// `f = unit * prod factors[i].0 ^ factors[i].1` with monic irreducible
/// factors, pairwise distinct, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(QPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a nonzero rational polynomial into monic irreducibles over Q.
pub fn factor_over_q(f: &QPoly) -> Result<Factorization, ArithError> {
    let Some(lead) = f.leading().cloned() else {
        return Err(ArithError::ZeroPolynomial);
    };
    let mut factors = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        let (_, gi) = g.clear_denominators();
        for h in factor_squarefree_primitive(&gi.primitive_part()) {
            factors.push((h.to_rational().monic(), m));
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(Factorization {
        unit: lead,
        factors,
    })
}

fn canonical_cmp(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let o = a.coeff(i).cmp(&b.coeff(i));
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Irreducible factors over Z of a squarefree primitive polynomial with
/// positive leading coefficient.
pub fn factor_squarefree_primitive(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.deg();
    if n <= 1 {
        return if n == 1 { vec![f.clone()] } else { vec![] };
    }
    // pull out T factors so the trailing coefficient is nonzero
    if f.coeff(0).is_zero() {
        let x = ZPoly::new(vec![BigInt::zero(), BigInt::one()]);
        let rest = ZPoly::new(f.coeffs()[1..].to_vec());
        let mut out = vec![x];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading().expect("nonzero").clone();
    let bound = coefficient_bound(f) * lc.abs() * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        k += 1;
        pk *= &pb;
    }
    let lifted = hensel_lift_multi(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

/// Coefficient bound for any factor: `2^n * (n + 1) * |f|_inf`.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.deg();
    (BigInt::one() << n) * BigInt::from(n + 1) * f.max_norm()
}

/// Pick a prime keeping `f mod p` squarefree of full degree; among the first
/// few such primes prefer the one with the fewest modular factors.
fn choose_prime(f: &ZPoly) -> (u64, Vec<FpPoly>) {
    let lc = f.leading().expect("nonzero").clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime_u64(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.reduce_mod(p);
        if fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        tried += 1;
        let facs: Vec<FpPoly> = factor_mod_p(&fp).into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().is_some_and(|b| b.1.len() == 1) {
            break;
        }
    }
    best.expect("some prime keeps a squarefree polynomial squarefree")
}

fn reduce_nonneg(f: &ZPoly, m: &BigInt) -> ZPoly {
    f.map(|c| c.mod_floor(m))
}

fn reduce_symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2u32;
    f.map(|c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

/// Division by a monic integer polynomial, exact over Z.
fn div_rem_monic(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
    debug_assert!(b.is_monic());
    let db = b.deg();
    if a.is_zero() || a.deg() < db {
        return (ZPoly::zero(), a.clone());
    }
    let mut r = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); a.deg() - db + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                r[k + j] -= &c * bc;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (ZPoly::new(q), ZPoly::new(r))
}

fn lift_fp(f: &FpPoly) -> ZPoly {
    f.map(|c| BigInt::from(c.value()))
}

/// One quadratic Hensel step: from `f = g h mod m` with Bezout `s g + t h = 1 mod m`
/// to the same identities mod `m^2`. `h` is monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = reduce_nonneg(&(f - &(g * h)), &m2);
    let (q, r) = div_rem_monic(&reduce_nonneg(&(s * &e), &m2), h);
    let g2 = reduce_nonneg(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h2 = reduce_nonneg(&(h + &r), &m2);
    let b = reduce_nonneg(&(&(&(s * &g2) + &(t * &h2)) - &ZPoly::one()), &m2);
    let (c, d) = div_rem_monic(&reduce_nonneg(&(s * &b), &m2), &h2);
    let s2 = reduce_nonneg(&(s - &d), &m2);
    let t2 = reduce_nonneg(&(&(t - &(t * &b)) - &(&c * &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift `f = lc(f) * prod us (mod p)` to monic factors modulo `p^k`.
pub fn hensel_lift_multi(f: &ZPoly, us: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    let lc = f.leading().expect("nonzero").clone();
    if us.len() == 1 {
        let inv = lc
            .mod_floor(&pk)
            .modinv(&pk)
            .expect("leading coefficient is a unit mod p");
        return vec![reduce_nonneg(&f.map(|c| c * &inv), &pk)];
    }
    let (left, right) = us.split_at(us.len() / 2);
    let lcp = Fp::from_bigint(&lc, p);
    let g0 = left.iter().fold(FpPoly::constant(lcp), |acc, u| &acc * u);
    let h0 = right.iter().fold(FpPoly::one(), |acc, u| &acc * u);
    let (one, s0, t0) = g0.ext_gcd(&h0);
    debug_assert_eq!(one.deg(), 0);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(p);
    let mut e = 1u32;
    while e < k {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
        e *= 2;
    }
    let g = reduce_nonneg(&g, &pk);
    let h = reduce_nonneg(&h, &pk);
    let mut out = hensel_lift_multi(&g, left, p, k);
    out.extend(hensel_lift_multi(&h, right, p, k));
    out
}

/// Zassenhaus recombination of lifted monic factors.
fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut result = Vec::new();
    let mut g = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc = g.leading().expect("nonzero").clone();
            let cand = subset
                .iter()
                .fold(ZPoly::constant(lc.clone()), |acc, &i| &acc * &lifted[i]);
            let cand = reduce_symmetric(&cand, pk);
            // cheap constant-term test before the full division
            let c0 = cand.coeff(0);
            if c0.is_zero() || !(&lc * g.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let cand = cand.primitive_part();
            if let Some(q) = g.div_exact_int(&cand) {
                result.push(cand);
                g = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if g.deg() > 0 {
        result.push(g.primitive_part());
    }
    result
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, qpoly};
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn fac(s: &str) -> Factorization {
        factor_over_q(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn cyclotomic_split() {
        let f = fac("T^4 - 1");
        assert_eq!(
            f.factors,
            vec![
                (qpoly(&[-1, 1]), 1),
                (qpoly(&[1, 1]), 1),
                (qpoly(&[1, 0, 1]), 1)
            ]
        );
    }

    #[test]
    fn square_of_irreducible() {
        let f = fac("(T^2 - T + 5)^2");
        assert_eq!(f.factors, vec![(qpoly(&[5, -1, 1]), 2)]);
    }

    #[test]
    fn irreducible_quadratic() {
        assert!(fac("T^2 - 2*T + 8").is_irreducible());
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            factor_over_q(&QPoly::zero()),
            Err(ArithError::ZeroPolynomial)
        );
    }

    #[test]
    fn non_monic_rational_input() {
        let f = parse_poly("6*T^2 + 1/2*T - 1/2").unwrap();
        let fa = factor_over_q(&f).unwrap();
        assert_eq!(fa.unit, rat(6, 1));
        assert_eq!(fa.factors.len(), 2);
        assert_eq!(fa.expand(), f);
    }

    #[test]
    fn hard_recombination_cases() {
        // T^4 + 1 is irreducible over Q but splits modulo every prime
        assert!(fac("T^4 + 1").is_irreducible());
        // Swinnerton-Dyer polynomial for sqrt2, sqrt3
        assert!(fac("T^4 - 10*T^2 + 1").is_irreducible());
        let f = fac("(T^4 + 1)*(T^2 - 2)*(T^3 - 3)*T");
        assert_eq!(f.factors.len(), 4);
    }

    #[test]
    fn weil_product() {
        let f = fac("(T^2 - T + 5)^2*(T^2 + 5)");
        assert_eq!(
            f.factors,
            vec![(qpoly(&[5, -1, 1]), 2), (qpoly(&[5, 0, 1]), 1)]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn factorization_multiplies_back(
            parts in prop::collection::vec(prop::collection::vec(-9i64..10, 1..5), 1..5)
        ) {
            // products of small random factors, total degree <= 12
            let mut f = QPoly::one();
            for c in &parts {
                let mut c = c.clone();
                c.push(1 + (c.len() as i64 % 3));
                let g = qpoly(&c);
                if f.deg() + g.deg() <= 12 {
                    f = &f * &g;
                }
            }
            let fa = factor_over_q(&f).unwrap();
            prop_assert_eq!(fa.expand(), f.clone());
            for (g, _) in &fa.factors {
                prop_assert!(g.is_monic());
                // irreducible modulo nothing simple to check; re-factoring is a fixed point
                let again = factor_over_q(g).unwrap();
                prop_assert!(again.is_irreducible());
            }
            for w in fa.factors.windows(2) {
                prop_assert!(w[0].0 != w[1].0);
            }
        }
    }
}
