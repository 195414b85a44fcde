//! Factorization of univariate polynomials over prime fields
//! (squarefree decomposition, distinct-degree, Cantor-Zassenhaus).

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Fp;
use crate::FpPoly;

/// Factor with an explicit modulus; coefficients may be unbound.
pub fn factor_mod(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    factor_mod_p(&f.bind(p))
}

fn modulus_of(f: &FpPoly) -> u64 {
    f.coeffs()
        .iter()
        .map(|c| c.modulus())
        .find(|&m| m != 0)
        .expect("polynomial carries no modulus")
}

/// Squarefree decomposition of a monic polynomial over `F_p`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = modulus_of(f);
    let mut out = Vec::new();
    sqf_rec(&f.monic(), p, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities produced by the p-th root recursion
    let mut merged: Vec<(FpPoly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.iter_mut().find(|(_, k)| *k == m) {
            Some(e) => e.0 = &e.0 * &g,
            None => merged.push((g, m)),
        }
    }
    merged
}

fn sqf_rec(f: &FpPoly, p: u64, scale: u32, out: &mut Vec<(FpPoly, u32)>) {
    if f.deg() == 0 {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        sqf_rec(&pth_root(f, p), p, scale * p as u32, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        sqf_rec(&pth_root(&c, p), p, scale * p as u32, out);
    }
}

fn pth_root(f: &FpPoly, p: u64) -> FpPoly {
    let p = p as usize;
    FpPoly::new(f.coeffs().iter().step_by(p).cloned().collect())
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of all degree-`d` factors.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = modulus_of(f);
    let pb = BigInt::from(p);
    let x = FpPoly::new(vec![Fp::new(0, p), Fp::new(1, p)]);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pb, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.deg() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let k = rest.deg();
        out.push((rest, k));
    }
    out
}

/// Split a squarefree monic product of degree-`d` irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut impl Rng) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = modulus_of(f);
    loop {
        let a = FpPoly::new(
            (0..n)
                .map(|_| Fp::new(rng.gen_range(0..p) as i64, p))
                .collect(),
        );
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map to F_2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
            &a.pow_mod(&e, f) - &FpPoly::constant(Fp::new(1, p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities, sorted
/// by degree then coefficients. Deterministic (fixed RNG seed).
pub fn factor_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let f = &f.bind(modulus_of(f));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| key(&a.0).cmp(&key(&b.0)))
    });
    out
}

fn key(f: &FpPoly) -> Vec<u64> {
    f.coeffs().iter().map(|c| c.value()).collect()
}

pub fn is_irreducible(f: &FpPoly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let sq = squarefree_decomposition(f);
    if sq.len() != 1 || sq[0].1 != 1 {
        return false;
    }
    let dd = distinct_degree(f);
    dd.len() == 1 && dd[0].1 == f.deg()
}

/// Roots in `F_p` of a nonzero polynomial.
pub fn roots(f: &FpPoly) -> Vec<Fp> {
    let mut out: Vec<Fp> = factor_mod_p(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect();
    out.sort_by_key(|r| r.value());
    out
}

/// A monic irreducible polynomial of degree `k` over `F_p` (smallest in
/// lexicographic coefficient order).
pub fn irreducible_of_degree(p: u64, k: usize) -> FpPoly {
    assert!(k >= 1);
    let total = (p as u128).saturating_pow(k as u32);
    let mut idx: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut t = idx;
        for _ in 0..k {
            coeffs.push(Fp::new((t % p as u128) as i64, p));
            t /= p as u128;
        }
        coeffs.push(Fp::new(1, p));
        let f = FpPoly::new(coeffs);
        if is_irreducible(&f) {
            return f;
        }
        idx += 1;
        assert!(
            idx < total,
            "an irreducible polynomial exists in every degree"
        );
    }
}

/// Lift a polynomial over `F_p` to integer residues in `[0, p)`.
pub fn lift_nonnegative(f: &FpPoly) -> crate::ZPoly {
    f.map(|c| BigInt::from(c.value()))
}

/// The polynomial `one()` bound to `p`.
pub fn one_mod(p: u64) -> FpPoly {
    FpPoly::constant(Fp::new(1, p))
}

/// Check a factorization by multiplying it back.
pub fn expand(factors: &[(FpPoly, u32)]) -> FpPoly {
    factors
        .iter()
        .fold(FpPoly::one(), |acc, (g, m)| &acc * &g.pow(*m))
}
