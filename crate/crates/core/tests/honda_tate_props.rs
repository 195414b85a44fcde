//! Structural properties of simple classes and phantom decisions.

use num_traits::Zero;
use phantom_arith::{rat, rat_int, QPoly, Rational};
use phantom_core::honda_tate::{invariant_sum, ContainingConvention};
use phantom_core::{
    decompose_representation, frobenius_charpoly, phantom_exists, phantom_exists_with,
    simple_class_from_weil, PhantomDecision, PrimePower,
};
use proptest::prelude::*;

fn quad(a: i64, q: i64) -> QPoly {
    QPoly::new(vec![rat_int(q), rat_int(-a), rat_int(1)])
}

fn prime_power() -> impl Strategy<Value = (u64, u32)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..=3)
}

/// A real Weil quadratic `T^2 - aT + q` with `|a| <= 2 sqrt(q)`.
fn weil_quadratic(q: u64) -> impl Strategy<Value = QPoly> {
    let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
    (-bound..=bound).prop_map(move |a| quad(a, q as i64))
}

fn weil_product() -> impl Strategy<Value = (PrimePower, QPoly)> {
    prime_power().prop_flat_map(|(p, a)| {
        let q = p.pow(a);
        prop::collection::vec((weil_quadratic(q), 1u32..=3), 1..=3).prop_map(move |fs| {
            let f = fs
                .iter()
                .fold(QPoly::one(), |acc, (g, k)| &acc * &g.pow(*k));
            (PrimePower::from_parts(p, a).unwrap(), f)
        })
    })
}

fn divides(a: &QPoly, b: &QPoly) -> bool {
    b.rem(a).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_sum_to_an_integer((q, f) in weil_product()) {
        for (class, _) in decompose_representation(&f, &q).unwrap() {
            prop_assert_eq!(invariant_sum(&class), Rational::zero());
            prop_assert_eq!(2 * class.d, class.n as u64 * class.e);
            let total: Rational = class.slopes.iter().sum();
            prop_assert_eq!(total * rat(2, 1), rat_int(class.n as i64));
            prop_assert_eq!(frobenius_charpoly(&class).deg() as u64, 2 * class.d);
        }
    }

    #[test]
    fn witness_and_containing_round_trip((q, f) in weil_product()) {
        let dec = phantom_exists(&f, &q).unwrap();
        prop_assert_eq!(dec.realizable, dec.factors.iter().all(|x| (x.multiplicity as u64).is_multiple_of(x.required)));
        if let Some(w) = &dec.witness {
            prop_assert_eq!(PhantomDecision::charpoly_of(w), f.clone());
        }
        let containing = PhantomDecision::charpoly_of(&dec.minimal_containing);
        prop_assert!(divides(&f, &containing));
        // one fewer copy of any class no longer contains the input
        for i in 0..dec.minimal_containing.len() {
            let mut smaller = dec.minimal_containing.clone();
            smaller[i].1 -= 1;
            prop_assert!(!divides(&f, &PhantomDecision::charpoly_of(&smaller)));
        }
        let copies = phantom_exists_with(&f, &q, ContainingConvention::Copies).unwrap();
        prop_assert!(divides(&f, &PhantomDecision::charpoly_of(&copies.minimal_containing)));
    }

    #[test]
    fn ordinary_factors_are_elliptic(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), seed in 0u64..1000) {
        let bound = (2.0 * (p as f64).sqrt()).floor() as i64;
        let a = (seed as i64 % (2 * bound + 1)) - bound;
        prop_assume!(a % p as i64 != 0);
        let q = PrimePower::new(p).unwrap();
        let class = simple_class_from_weil(&quad(a, p as i64), &q).unwrap();
        prop_assert_eq!((class.n, class.e, class.d), (2, 1, 1));
    }
}

#[test]
fn supersingular_families_have_index_g() {
    for (r, s) in [(1u32, 2u32), (2, 3), (1, 4)] {
        let g = r + s;
        for p in [2u64, 3, 5] {
            let q = PrimePower::from_parts(p, g).unwrap();
            let f = quad(p.pow(r) as i64, p.pow(g) as i64);
            let class = simple_class_from_weil(&f, &q).unwrap();
            assert_eq!(
                class.slopes,
                vec![rat(r as i64, g as i64), rat(s as i64, g as i64)]
            );
            assert_eq!((class.e, class.d), (g as u64, g as u64));
        }
    }
}
