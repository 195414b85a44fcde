//! Random instance generators shared by the acceptance target.

use phantom_arith::{rat, rat_int, RatMatrix};
use phantom_core::{LefschetzData, PolarizedPair};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    let data = (0..rows * cols)
        .map(|_| rat_int(rng.gen_range(-bound..=bound)))
        .collect();
    RatMatrix::new(rows, cols, data).unwrap()
}

/// `A^T A + I` for a random integer `A`.
pub fn positive_definite(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let a = random_matrix(rng, n, n, 3);
    &(&a.transpose() * &a) + &RatMatrix::identity(n)
}

pub fn unipotent(rng: &mut ChaCha8Rng, n: usize, upper: bool) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if (upper && j > i) || (!upper && j < i) {
                m[(i, j)] = rat_int(rng.gen_range(-2..=2));
            }
        }
    }
    m
}

/// A random element of `Sp_{2g}(Q)` built from shears and Levi blocks.
pub fn symplectic(rng: &mut ChaCha8Rng, g: usize) -> RatMatrix {
    let mut s = RatMatrix::identity(2 * g);
    for _ in 0..3 {
        let b = random_matrix(rng, g, g, 2);
        let sym = &b + &b.transpose();
        let upper = RatMatrix::identity(g).hstack(&sym);
        let lower = RatMatrix::zeros(g, g).hstack(&RatMatrix::identity(g));
        let shear = RatMatrix::from_rows(
            (0..g)
                .map(|i| upper.row(i))
                .chain((0..g).map(|i| lower.row(i)))
                .collect(),
        )
        .unwrap();
        let a = &unipotent(rng, g, true) * &unipotent(rng, g, false);
        let levi = a.block_diag(&a.inverse().unwrap().transpose());
        s = &(&(&s * &shear) * &levi) * &shear.transpose();
    }
    s
}

/// Symplectic projection `Q^{2g} -> Q^{2h}` onto the first `h` coordinate pairs.
pub fn block_projection(g: usize, h: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(2 * h, 2 * g);
    for i in 0..h {
        m[(i, i)] = rat(1, 1);
        m[(h + i, g + i)] = rat(1, 1);
    }
    m
}

pub type Instance = (RatMatrix, PolarizedPair, PolarizedPair);

pub fn symmetric_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..=10);
    let m = rng.gen_range(1..=10);
    let src = PolarizedPair::new(positive_definite(rng, n), 1, 0).unwrap();
    let tgt = PolarizedPair::new(positive_definite(rng, m), 1, 0).unwrap();
    let rank = rng.gen_range(0..=n.min(m));
    let gamma = &random_matrix(rng, m, rank, 3) * &random_matrix(rng, rank, n, 3);
    (gamma, src, tgt)
}

pub fn symplectic_instance(rng: &mut ChaCha8Rng) -> Instance {
    let g = rng.gen_range(1..=5);
    let h = rng.gen_range(0..=g);
    let gamma = &(&symplectic(rng, h) * &block_projection(g, h)) * &symplectic(rng, g);
    let gamma = gamma.scale(&rat_int(rng.gen_range(1..=3)));
    (
        gamma,
        PolarizedPair::standard_symplectic(g, 1),
        PolarizedPair::standard_symplectic(h, 1),
    )
}

/// Projection onto `im gp` along `ker g`, from an explicit adapted basis.
pub fn oracle_projection(gp: &RatMatrix, g: &RatMatrix) -> RatMatrix {
    let im = gp.image_basis();
    let ker = g.kernel_basis();
    let b = im.hstack(&ker);
    let d: Vec<_> = (0..b.rows())
        .map(|i| if i < im.cols() { rat(1, 1) } else { rat(0, 1) })
        .collect();
    &(&b * &RatMatrix::diagonal(&d)) * &b.inverse().unwrap()
}

/// Random hard-Lefschetz data of formal dimension `1..=3`.
pub fn lefschetz_data(rng: &mut ChaCha8Rng) -> LefschetzData {
    let d = rng.gen_range(1..=3usize);
    // odd-degree primitive pieces carry antisymmetric forms, so their sizes are even
    let prim: Vec<usize> = (0..=d)
        .map(|m| {
            let k = rng.gen_range(0..=2usize) + usize::from(m == 0);
            if m % 2 == 0 {
                k
            } else {
                k / 2 * 2
            }
        })
        .collect();
    let forms: Vec<RatMatrix> = prim
        .iter()
        .enumerate()
        .map(|(m, &k)| {
            if m % 2 == 0 {
                positive_definite(rng, k)
            } else {
                PolarizedPair::standard_symplectic(k / 2, 1).q
            }
        })
        .collect();
    let dims: Vec<usize> = (0..=2 * d)
        .map(|k| {
            (0..=d.min(k))
                .filter(|&m| (k - m) % 2 == 0 && (k - m) / 2 <= d - m)
                .map(|m| prim[m])
                .sum()
        })
        .collect();
    let changes: Vec<RatMatrix> = dims
        .iter()
        .map(|&k| &unipotent(rng, k, true) * &unipotent(rng, k, false))
        .collect();
    LefschetzData::from_primitive(d, &prim, &forms, &changes).unwrap()
}
