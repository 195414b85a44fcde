//! The exact Weil test against floating-point root moduli.

use num_complex::Complex64;
use phantom_arith::{rat_int, QPoly};
use phantom_core::{is_weil_polynomial, newton_polygon, tate_twist, PrimePower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

/// Durand-Kerner iteration followed by Newton polishing; `coeffs` ascending, monic.
fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let deriv = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc * z + c * i as f64
            })
    };
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..5 {
            let d = deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    z
}

fn oracle_is_weil(f: &QPoly, q: u64) -> bool {
    // distinct roots only: divide out repeated factors first
    let sf = f.squarefree_part();
    let coeffs: Vec<f64> = sf
        .coeffs()
        .iter()
        .map(|c| {
            c.numer().to_string().parse::<f64>().unwrap()
                / c.denom().to_string().parse::<f64>().unwrap()
        })
        .collect();
    let target = (q as f64).sqrt();
    complex_roots(&coeffs)
        .iter()
        .all(|z| (z.norm() - target).abs() < TOL * target)
}

fn random_monic(rng: &mut ChaCha8Rng, q: u64) -> QPoly {
    let deg = rng.gen_range(1..=4usize);
    // half of the samples are built from real Weil factors so both verdicts occur
    if rng.gen_bool(0.5) {
        let bound = 2.0 * (q as f64).sqrt();
        let mut f = QPoly::one();
        let mut d = 0;
        while d < deg {
            let a = rng.gen_range(-(bound.floor() as i64)..=bound.floor() as i64);
            let g = QPoly::new(vec![rat_int(q as i64), rat_int(-a), rat_int(1)]);
            f = &f * &g;
            d += 2;
        }
        f
    } else {
        let mut c: Vec<_> = (0..deg)
            .map(|_| rat_int(rng.gen_range(-50..=50i64)))
            .collect();
        if c[0] == rat_int(0) {
            c[0] = rat_int(1);
        }
        c.push(rat_int(1));
        QPoly::new(c)
    }
}

#[test]
fn exact_test_agrees_with_root_moduli() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut verdicts = [0usize; 2];
    for _ in 0..600 {
        let q = [2u64, 3, 4, 5, 8, 9][rng.gen_range(0..6)];
        let f = random_monic(&mut rng, q);
        let exact = is_weil_polynomial(&f, &PrimePower::new(q).unwrap())
            .unwrap()
            .is_weil;
        assert_eq!(
            exact,
            oracle_is_weil(&f, q),
            "disagreement on {f} with q = {q}"
        );
        verdicts[exact as usize] += 1;
    }
    assert!(
        verdicts[0] > 50 && verdicts[1] > 50,
        "unbalanced sample: {verdicts:?}"
    );
}

#[test]
fn boundary_cases_agree_with_root_moduli() {
    let cases = [
        ("T^2 - 2", 2u64),
        ("T^2 + 2", 2),
        ("T - 2", 4),
        ("T + 3", 9),
        ("T^2 - 4*T + 4", 4),
        ("T^2 - 3*T + 3", 3),
        ("T^2 - 4*T + 5", 5),
        ("T^4 + 25", 5),
        ("T^4 - 2*T^2 + 9", 3),
    ];
    for (s, q) in cases {
        let f = phantom_arith::parse_poly(s).unwrap();
        let exact = is_weil_polynomial(&f, &PrimePower::new(q).unwrap())
            .unwrap()
            .is_weil;
        assert_eq!(exact, oracle_is_weil(&f, q), "{s} with q = {q}");
    }
}

#[test]
fn twisting_preserves_the_newton_slopes_up_to_shift() {
    let q = PrimePower::new(8).unwrap();
    let f = phantom_arith::parse_poly("T^2 - 2*T + 8").unwrap();
    let g = tate_twist(&f, -1, &q).unwrap();
    let sf = newton_polygon(&f, &q).unwrap().slope_multiset();
    let sg = newton_polygon(&g, &q).unwrap().slope_multiset();
    let one = rat_int(1);
    assert_eq!(sg, sf.iter().map(|s| s + &one).collect::<Vec<_>>());
}
