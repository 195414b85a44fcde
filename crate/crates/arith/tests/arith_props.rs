//! Randomized identities for the exact arithmetic layer, checked against
//! independent constructions (known roots, products, brute force).

use num_bigint::BigInt;
use phantom_arith::fp_factor::{expand, factor_mod_p, is_irreducible};
use phantom_arith::groebner::is_unit_ideal;
use phantom_arith::{
    factor_over_q, factor_over_qp, lower_convex_hull, rat, rat_int, sturm_count, Endpoint, Fp,
    FpPoly, MultiPoly, QMultiPoly, QPoly, RatMatrix, Rational,
};
use proptest::prelude::*;

fn linear(root: i64) -> QPoly {
    QPoly::new(vec![rat_int(-root), rat_int(1)])
}

fn small_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 2..=4).prop_map(|mut c| {
        *c.last_mut().unwrap() = 1;
        QPoly::new(c.into_iter().map(rat_int).collect())
    })
}

fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-5i64..=5, n * n)
        .prop_map(move |d| RatMatrix::new(n, n, d.into_iter().map(rat_int).collect()).unwrap())
}

fn point(x: i64) -> Endpoint {
    Endpoint::Rational(rat(2 * x + 1, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_expands_back(fs in prop::collection::vec(small_poly(), 1..=3), unit in 1i64..=4) {
        let f = fs.iter().fold(QPoly::constant(rat_int(unit)), |a, g| &a * g);
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        prop_assert_eq!(fac.unit.clone(), rat_int(unit));
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            // an irreducible factor stays irreducible when factored again
            prop_assert!(factor_over_q(g).unwrap().is_irreducible());
        }
        let total: usize = fac.factors.iter().map(|(g, m)| g.deg() * *m as usize).sum();
        prop_assert_eq!(total, f.deg());
    }

    #[test]
    fn sturm_counts_known_roots(roots in prop::collection::btree_set(-8i64..=8, 1..=6)) {
        // the factor x^2 + 1 contributes no real roots
        let f = roots.iter().fold(QPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]), |a, &r| &a * &linear(r));
        for lo in -9i64..=8 {
            for hi in lo..=8 {
                let want = roots.iter().filter(|&&r| 2 * lo + 1 < 2 * r && 2 * r < 2 * hi + 1).count();
                prop_assert_eq!(sturm_count(&f, &point(lo), &point(hi)).unwrap(), want);
            }
        }
    }

    #[test]
    fn sturm_is_additive(f in small_poly(), g in small_poly(), a in -6i64..=0, b in 0i64..=3, c in 3i64..=8) {
        let h = (&f * &g).squarefree_part();
        let left = sturm_count(&h, &point(a), &point(b)).unwrap();
        let right = sturm_count(&h, &point(b), &point(c)).unwrap();
        let whole = sturm_count(&h, &point(a), &point(c)).unwrap();
        // the shared endpoint (2b+1)/2 is never an integer root but may be a rational one
        let at_b = usize::from(h.eval(&rat(2 * b + 1, 2)) == Rational::from_integer(0.into()));
        prop_assert_eq!(left + right, whole + at_b);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(4), b in matrix(4)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        prop_assert_eq!(ab.transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn cayley_hamilton_and_inverse(a in matrix(4)) {
        let c = a.char_poly().unwrap();
        prop_assert!(a.eval_poly(&c).is_zero());
        // det(xI - A) at 0 is (-1)^4 det A
        prop_assert_eq!(c.coeff(0), a.determinant().unwrap());
        let m = a.min_poly().unwrap();
        prop_assert!(a.eval_poly(&m).is_zero());
        prop_assert!(c.rem(&m).is_zero());
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(&a * &inv, RatMatrix::identity(4)),
            Err(_) => prop_assert_eq!(a.determinant().unwrap(), rat_int(0)),
        }
    }

    #[test]
    fn rank_nullity(rows in 1usize..=5, cols in 1usize..=5, k in 0usize..=5, seed in prop::collection::vec(-3i64..=3, 50)) {
        let k = k.min(rows).min(cols);
        let l = RatMatrix::new(rows, k, seed[..rows * k].iter().map(|&x| rat_int(x)).collect()).unwrap();
        let r = RatMatrix::new(k, cols, seed[25..25 + k * cols].iter().map(|&x| rat_int(x)).collect()).unwrap();
        let m = &l * &r;
        prop_assert!(m.rank() <= k);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.cols(), cols);
        prop_assert!((&m * &ker).is_zero());
        prop_assert_eq!(m.image_basis().cols(), m.rank());
    }

    #[test]
    fn mod_p_factorization(coeffs in prop::collection::vec(0i64..13, 2..=7)) {
        let p = 13;
        let mut c: Vec<Fp> = coeffs.iter().map(|&x| Fp::new(x, p)).collect();
        *c.last_mut().unwrap() = Fp::new(1, p);
        let f = FpPoly::new(c);
        let fac = factor_mod_p(&f);
        prop_assert_eq!(expand(&fac), f.clone());
        for (g, _) in &fac {
            prop_assert!(is_irreducible(g));
        }
    }

    #[test]
    fn padic_degrees_sum(f in small_poly(), g in small_poly(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let h = (&f * &g).squarefree_part();
        prop_assume!(h.deg() > 0 && h.coeff(0) != rat_int(0));
        let parts = factor_over_qp(&h, p).unwrap();
        prop_assert_eq!(parts.iter().map(|x| x.degree).sum::<usize>(), h.deg());
        for x in &parts {
            prop_assert_eq!(x.ramification * x.residue_degree, x.degree);
        }
        // the valuations add up to ord_p of the constant term
        let total: Rational = parts.iter().map(|x| &x.valuation * rat_int(x.degree as i64)).sum();
        let v = phantom_arith::padic_valuation(&h.coeff(0), &BigInt::from(p)).unwrap();
        prop_assert_eq!(total, rat_int(v));
    }
}

#[test]
fn hull_of_collinear_and_convex_points() {
    let pts: Vec<(Rational, Rational)> = [(0, 3), (1, 1), (2, 2), (3, 0), (4, 0)]
        .iter()
        .map(|&(x, y)| (rat_int(x), rat_int(y)))
        .collect();
    let hull = lower_convex_hull(&pts).unwrap();
    let xs: Vec<Rational> = hull.iter().map(|p| p.0.clone()).collect();
    assert_eq!(xs, vec![rat_int(0), rat_int(1), rat_int(3), rat_int(4)]);
}

#[test]
fn unit_ideal_detection() {
    let names = ["x", "y"];
    let parse = |s: &str| QMultiPoly::parse(s, &names).unwrap();
    // two conics meeting in four points: not the unit ideal
    assert!(!is_unit_ideal(&[parse("x^2 + y^2 - 5"), parse("x*y - 2")], 10_000).unwrap());
    // parallel lines
    assert!(is_unit_ideal(&[parse("x - y"), parse("x - y - 1")], 10_000).unwrap());
    let fp: Vec<MultiPoly<Fp>> = [parse("x^2 - 2"), parse("y")]
        .iter()
        .map(|f| f.reduce_mod(7).unwrap())
        .collect();
    assert!(!is_unit_ideal(&fp, 10_000).unwrap());
}
