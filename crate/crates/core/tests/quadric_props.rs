//! Randomized checks of discriminants, ranks and Betti bookkeeping.

use phantom_arith::{rat_int, BigRational, Fp, Matrix, MultiPoly, QMultiPoly, RatMatrix};
use phantom_core::{
    discriminant, euler_characteristic, nondegenerate_part, rank_at, smooth_fibration_betti,
    FiberClass, SymmetricFormMatrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

fn random_linear(rng: &mut ChaCha8Rng) -> QMultiPoly {
    (0..3).fold(QMultiPoly::zero(3), |acc, v| {
        &acc + &QMultiPoly::var(v, 3).scale(&rat_int(rng.gen_range(-4..=4)))
    })
}

fn random_linear_form(rng: &mut ChaCha8Rng, size: usize) -> SymmetricFormMatrix<BigRational> {
    let mut entries = vec![vec![QMultiPoly::zero(3); size]; size];
    for i in 0..size {
        for j in i..size {
            let e = random_linear(rng);
            entries[i][j] = e.clone();
            entries[j][i] = e;
        }
    }
    if entries.iter().flatten().all(|e| e.is_zero()) {
        entries[0][0] = QMultiPoly::var(0, 3);
    }
    SymmetricFormMatrix::new(names(), entries, vec![0; size], 1).unwrap()
}

/// `P^T A P` for a constant matrix `P`.
fn congruent(
    q: &SymmetricFormMatrix<BigRational>,
    p: &RatMatrix,
) -> SymmetricFormMatrix<BigRational> {
    let n = q.size();
    let entries: Vec<Vec<QMultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = QMultiPoly::zero(3);
                    for k in 0..n {
                        for l in 0..n {
                            let c = &p[(k, i)] * &p[(l, j)];
                            acc = &acc + &q.entries()[k][l].scale(&c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    SymmetricFormMatrix::new(names(), entries, q.weights().to_vec(), q.twist()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn discriminant_degree_and_congruence(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_linear_form(&mut rng, size);
        let delta = discriminant(&q);
        if !delta.is_zero() {
            prop_assert_eq!(delta.homogeneous_degree().map(i64::from), Some(q.expected_degree()));
        }
        let p = loop {
            let data = (0..size * size).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
            let p = RatMatrix::new(size, size, data).unwrap();
            if p.rank() == size {
                break p;
            }
        };
        let det = p.determinant().unwrap();
        prop_assert_eq!(discriminant(&congruent(&q, &p)), delta.scale(&(&det * &det)));
    }

    #[test]
    fn nondegenerate_part_ranks(seed in any::<u64>(), n in 0usize..=6, r in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = r.min(n);
        // B^T D B with D of rank r gives a symmetric matrix of rank <= r
        let b = RatMatrix::new(n, n, (0..n * n).map(|_| rat_int(rng.gen_range(-3..=3))).collect()).unwrap();
        let d: Vec<BigRational> = (0..n).map(|i| if i < r { rat_int(rng.gen_range(1..=4)) } else { rat_int(0) }).collect();
        let a = &(&b.transpose() * &Matrix::diagonal(&d)) * &b;
        let (core, kernel) = nondegenerate_part(&a).unwrap();
        prop_assert_eq!(core.rows() + kernel.cols(), n);
        prop_assert_eq!(core.rows(), a.rank());
        prop_assert!(core.is_symmetric());
        if core.rows() > 0 {
            prop_assert!(!num_traits::Zero::is_zero(&core.determinant().unwrap()));
        }
        prop_assert!((&a * &kernel).is_zero());
    }

    #[test]
    fn euler_characteristic_is_multiplicative(
        half in prop::collection::vec(0u64..6, 1..=3),
        m in 1u32..=5,
    ) {
        // Poincare-symmetric base with b_0 = 1
        let mut b: Vec<u64> = half.clone();
        b[0] = 1;
        let mut full = b.clone();
        full.extend(b.iter().rev().skip(1));
        let chi = euler_characteristic(&full);
        if m % 2 == 1 {
            let bx = smooth_fibration_betti(&full, m, None).unwrap();
            prop_assert_eq!(euler_characteristic(&bx), chi * (m as i64 + 1));
        } else {
            // trivial double cover: two copies of the base
            let cover: Vec<u64> = full.iter().map(|x| 2 * x).collect();
            let bx = smooth_fibration_betti(&full, m, Some(&cover)).unwrap();
            prop_assert_eq!(euler_characteristic(&bx), chi * (m as i64 + 2));
            prop_assert!(phantom_core::is_poincare_symmetric(&bx));
        }
    }
}

fn to_fp(q: &SymmetricFormMatrix<BigRational>, p: u64) -> SymmetricFormMatrix<Fp> {
    q.reduce_mod(p).unwrap()
}

#[test]
fn rank_drops_by_one_on_a_smooth_discriminant() {
    let p = 31u64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = loop {
        let q = to_fp(&random_linear_form(&mut rng, 3), p);
        if phantom_core::is_ordinary(&q, &Default::default())
            .unwrap()
            .ordinary
        {
            break q;
        }
    };
    let delta = discriminant(&q);
    let (mut on, mut off) = (0, 0);
    for a in 0..p {
        for b in 0..p {
            let pt = [Fp::new(1, p), Fp::new(a as i64, p), Fp::new(b as i64, p)];
            let (rank, class) = rank_at(&q, &pt).unwrap();
            if MultiPoly::eval(&delta, &pt) == Fp::new(0, p) {
                assert_eq!((rank, class), (2, FiberClass::UniqueSingularPoint));
                on += 1;
            } else {
                assert_eq!((rank, class), (3, FiberClass::Smooth));
                off += 1;
            }
        }
    }
    assert!(on > 0 && off > 0);
}
