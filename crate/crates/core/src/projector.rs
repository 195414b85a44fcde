//! Polarized adjoints, the Cayley-Hamilton idempotent attached to a morphism of
//! polarized spaces, the resulting motive idempotents, and Lefschetz projectors.

use num_traits::{One, Zero};
use phantom_arith::{QPoly, RatMatrix, Rational};

use crate::{CoreError, Result};

/// A rational vector space with a nondegenerate (anti)symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedPair {
    pub dim: usize,
    pub q: RatMatrix,
    /// `+1` for symmetric, `-1` for antisymmetric pairings.
    pub symmetry: i8,
    pub weight: i64,
}

impl PolarizedPair {
    pub fn new(q: RatMatrix, symmetry: i8, weight: i64) -> Result<Self> {
        if !q.is_square() {
            return Err(CoreError::Invalid("pairing matrix is not square".into()));
        }
        let expected = match symmetry {
            1 => q.clone(),
            -1 => -&q,
            s => {
                return Err(CoreError::Invalid(format!(
                    "symmetry must be +1 or -1, got {s}"
                )))
            }
        };
        if q.transpose() != expected {
            return Err(CoreError::Invalid(format!(
                "pairing is not {}",
                if symmetry == 1 {
                    "symmetric"
                } else {
                    "antisymmetric"
                }
            )));
        }
        if q.rank() < q.rows() {
            return Err(CoreError::SingularPairing);
        }
        Ok(PolarizedPair {
            dim: q.rows(),
            q,
            symmetry,
            weight,
        })
    }

    /// Detects the symmetry of `q` (symmetric takes precedence for the zero-size case).
    pub fn infer(q: RatMatrix, weight: i64) -> Result<Self> {
        let symmetry = if q.transpose() == q { 1 } else { -1 };
        Self::new(q, symmetry, weight)
    }

    /// The standard symplectic form `[[0, I_g], [-I_g, 0]]` on `Q^{2g}`.
    pub fn standard_symplectic(g: usize, weight: i64) -> Self {
        let mut q = RatMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            q[(i, g + i)] = Rational::one();
            q[(g + i, i)] = -Rational::one();
        }
        PolarizedPair {
            dim: 2 * g,
            q,
            symmetry: -1,
            weight,
        }
    }

    /// The identity Gram matrix on `Q^n`.
    pub fn euclidean(n: usize, weight: i64) -> Self {
        PolarizedPair {
            dim: n,
            q: RatMatrix::identity(n),
            symmetry: 1,
            weight,
        }
    }
}

fn check_shape(gamma: &RatMatrix, src: &PolarizedPair, tgt: &PolarizedPair) -> Result<()> {
    if gamma.rows() != tgt.dim || gamma.cols() != src.dim {
        return Err(CoreError::Invalid(format!(
            "gamma is {}x{}, expected {}x{}",
            gamma.rows(),
            gamma.cols(),
            tgt.dim,
            src.dim
        )));
    }
    Ok(())
}

/// `Q^{-1} gamma^T Q'`, the adjoint of `gamma` with respect to the two pairings.
pub fn adjoint(gamma: &RatMatrix, src: &PolarizedPair, tgt: &PolarizedPair) -> Result<RatMatrix> {
    check_shape(gamma, src, tgt)?;
    let qinv = src.q.inverse().map_err(|_| CoreError::SingularPairing)?;
    if tgt.q.rank() < tgt.dim {
        return Err(CoreError::SingularPairing);
    }
    Ok(&(&qinv * &gamma.transpose()) * &tgt.q)
}

/// The idempotent `pi = M P(M)` with `M = gamma' gamma`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitProjector {
    pub pi: RatMatrix,
    /// Zero when `gamma = 0`.
    pub p: QPoly,
    pub gamma_prime: RatMatrix,
    pub m: RatMatrix,
}

impl SplitProjector {
    /// `P(M)`, the inverse of `M` on the image of `gamma'` extended by zero.
    pub fn p_of_m(&self) -> RatMatrix {
        self.m.eval_poly_cleared(&self.p)
    }
}

/// `-(c(x) - c(0)) / (c(0) x)`.
fn cayley_hamilton_inverse(c: &QPoly) -> Option<QPoly> {
    let c0 = c.coeff(0);
    if c0.is_zero() {
        return None;
    }
    let scale = -Rational::one() / c0;
    Some(QPoly::new(
        c.coeffs()[1..].iter().map(|a| a * &scale).collect(),
    ))
}

pub fn build_projector(
    gamma: &RatMatrix,
    src: &PolarizedPair,
    tgt: &PolarizedPair,
) -> Result<SplitProjector> {
    let gamma_prime = adjoint(gamma, src, tgt)?;
    let m = &gamma_prime * gamma;
    let image = gamma_prime.image_basis();
    if image.cols() == 0 {
        return Ok(SplitProjector {
            pi: RatMatrix::zeros(src.dim, src.dim),
            p: QPoly::zero(),
            gamma_prime,
            m,
        });
    }
    let restricted = m.restrict(&image)?;
    let c = restricted.char_poly()?;
    let p = cayley_hamilton_inverse(&c).ok_or_else(|| {
        CoreError::NotPolarized("gamma' gamma is singular on the image of gamma'".into())
    })?;
    let pi = &m * &m.eval_poly_cleared(&p);
    Ok(SplitProjector {
        pi,
        p,
        gamma_prime,
        m,
    })
}

/// Ranks recorded by a successful [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub dim: usize,
    pub rank_gamma_prime: usize,
    pub nullity_gamma: usize,
}

pub fn verify_decomposition(
    sp: &SplitProjector,
    gamma: &RatMatrix,
    src: &PolarizedPair,
) -> Result<DecompositionReport> {
    let fail = |what: &str| Err(CoreError::DecompositionFails(what.into()));
    let dim = src.dim;
    let image = sp.gamma_prime.image_basis();
    let kernel = gamma.kernel_basis();
    if image.cols() + kernel.cols() != dim {
        return fail("rank(gamma') + nullity(gamma) != dim");
    }
    if RatMatrix::intersect_spaces(&image, &kernel).cols() != 0 {
        return fail("image(gamma') meets kernel(gamma)");
    }
    if !(&(&kernel.transpose() * &src.q) * &sp.gamma_prime).is_zero() {
        return fail("kernel(gamma) is not orthogonal to image(gamma')");
    }
    if &sp.pi * &sp.pi != sp.pi {
        return fail("pi is not idempotent");
    }
    if gamma * &sp.pi != *gamma {
        return fail("gamma pi != gamma");
    }
    if &sp.pi * &sp.gamma_prime != sp.gamma_prime {
        return fail("pi gamma' != gamma'");
    }
    let pi_image = sp.pi.image_basis();
    let mapped = gamma * &pi_image;
    if mapped.rank() != pi_image.cols() {
        return fail("gamma is not injective on image(pi)");
    }
    if mapped.rank() != gamma.rank() {
        return fail("gamma(image(pi)) != image(gamma)");
    }
    Ok(DecompositionReport {
        dim,
        rank_gamma_prime: image.cols(),
        nullity_gamma: kernel.cols(),
    })
}

/// `f = gamma P(M)`, `g = gamma'` and the idempotent `(f g)^2` on the target.
#[derive(Clone, Debug, PartialEq)]
pub struct MotivePair {
    pub f_mat: RatMatrix,
    pub g_mat: RatMatrix,
    pub idem_target: RatMatrix,
}

pub fn motive_idempotents(
    gamma: &RatMatrix,
    src: &PolarizedPair,
    tgt: &PolarizedPair,
) -> Result<MotivePair> {
    let sp = build_projector(gamma, src, tgt)?;
    let f_mat = gamma * &sp.p_of_m();
    let g_mat = sp.gamma_prime.clone();
    let fg = &f_mat * &g_mat;
    let idem_target = &fg * &fg;
    let fail = |what: &str| Err(CoreError::DecompositionFails(what.into()));
    if &idem_target * &idem_target != idem_target {
        return fail("target idempotent is not idempotent");
    }
    if &g_mat * &f_mat != sp.pi {
        return fail("g f != pi");
    }
    let src_image = sp.pi.image_basis();
    if &(&g_mat * &f_mat) * &src_image != src_image {
        return fail("g f is not the identity on image(pi)");
    }
    let tgt_image = idem_target.image_basis();
    if &fg * &tgt_image != tgt_image {
        return fail("f g is not the identity on the target image");
    }
    Ok(MotivePair {
        f_mat,
        g_mat,
        idem_target,
    })
}

/// Graded cohomology `H^0..H^{2d}` with a Lefschetz operator.
#[derive(Clone, Debug, PartialEq)]
pub struct LefschetzData {
    pub d: usize,
    pub dims: Vec<usize>,
    /// `ops[k]: H^k -> H^{k+2}` for `k = 0..2d-2`.
    pub ops: Vec<RatMatrix>,
    /// `pairings[k]` is the Gram matrix of `H^k x H^{2d-k} -> Q`.
    pub pairings: Option<Vec<RatMatrix>>,
}

/// The projectors `p^{n,r}` (indexed by `r`) and `s_n = sum (-1)^r p^{n,r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LefschetzProjectors {
    pub n: usize,
    pub projectors: Vec<RatMatrix>,
    pub s: RatMatrix,
}

impl LefschetzData {
    pub fn new(
        d: usize,
        dims: Vec<usize>,
        ops: Vec<RatMatrix>,
        pairings: Option<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if dims.len() != 2 * d + 1 {
            return Err(CoreError::Invalid(format!(
                "expected {} graded dimensions, got {}",
                2 * d + 1,
                dims.len()
            )));
        }
        let nops = (2 * d).saturating_sub(1);
        if ops.len() != nops {
            return Err(CoreError::Invalid(format!(
                "expected {nops} Lefschetz operators, got {}",
                ops.len()
            )));
        }
        for (k, l) in ops.iter().enumerate() {
            if l.rows() != dims[k + 2] || l.cols() != dims[k] {
                return Err(CoreError::Invalid(format!(
                    "L_{k} is {}x{}, expected {}x{}",
                    l.rows(),
                    l.cols(),
                    dims[k + 2],
                    dims[k]
                )));
            }
        }
        if let Some(ps) = &pairings {
            if ps.len() != dims.len() {
                return Err(CoreError::Invalid(format!(
                    "expected {} pairings, got {}",
                    dims.len(),
                    ps.len()
                )));
            }
            for (k, p) in ps.iter().enumerate() {
                if p.rows() != dims[k] || p.cols() != dims[2 * d - k] {
                    return Err(CoreError::Invalid(format!(
                        "pairing {k} has the wrong shape"
                    )));
                }
                if p.rank() < dims[k] {
                    return Err(CoreError::SingularPairing);
                }
            }
        }
        let ld = LefschetzData {
            d,
            dims,
            ops,
            pairings,
        };
        for n in 0..ld.d {
            if ld.dims[n] != ld.dims[2 * d - n] || ld.power(n, d - n).rank() != ld.dims[n] {
                return Err(CoreError::HardLefschetzFails(n));
            }
        }
        Ok(ld)
    }

    /// `L^e: H^k -> H^{k+2e}`.
    pub fn power(&self, k: usize, e: usize) -> RatMatrix {
        (0..e).fold(RatMatrix::identity(self.dims[k]), |acc, i| {
            &self.ops[k + 2 * i] * &acc
        })
    }

    /// Basis (as columns) of the primitive part of `H^m`, `m <= d`.
    pub fn primitive_basis(&self, m: usize) -> RatMatrix {
        let e = self.d - m + 1;
        if m + 2 * e > 2 * self.d {
            RatMatrix::identity(self.dims[m])
        } else {
            self.power(m, e).kernel_basis()
        }
    }

    /// Matrix of `(x, y) -> x^T Q_n L^{d-n} s y` on `H^n`, if pairings are present.
    pub fn hodge_form(&self, n: usize, s: &RatMatrix) -> Option<RatMatrix> {
        let ps = self.pairings.as_ref()?;
        Some(&(&ps[n] * &self.power(n, self.d - n)) * s)
    }

    /// Model data from primitive pieces.
    ///
    /// `forms[m]` is the Gram matrix of the primitive part `P^m` (size `prim_dims[m]`),
    /// `changes[k]` an invertible base change applied to `H^k`. In the model
    /// `H^k` is the direct sum of `L^r P^m` with `m + 2r = k`, `r <= d - m`; `L` shifts
    /// `r` and `<L^i u, L^j v> = forms[m](u, v)` when `i + j = d - m`.
    pub fn from_primitive(
        d: usize,
        prim_dims: &[usize],
        forms: &[RatMatrix],
        changes: &[RatMatrix],
    ) -> Result<Self> {
        if prim_dims.len() != d + 1 || forms.len() != d + 1 || changes.len() != 2 * d + 1 {
            return Err(CoreError::Invalid(
                "primitive data has the wrong length".into(),
            ));
        }
        // blocks[k] lists (m, r, offset) in the standard basis of H^k
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); 2 * d + 1];
        let mut dims = vec![0; 2 * d + 1];
        for (k, bk) in blocks.iter_mut().enumerate() {
            for (m, &pd) in prim_dims.iter().enumerate() {
                if m <= k && (k - m) % 2 == 0 && (k - m) / 2 <= d - m {
                    bk.push((m, (k - m) / 2, dims[k]));
                    dims[k] += pd;
                }
            }
        }
        let find = |k: usize, m: usize, r: usize| {
            blocks[k].iter().find(|b| b.0 == m && b.1 == r).map(|b| b.2)
        };
        let mut ops = Vec::new();
        for k in 0..(2 * d).saturating_sub(1) {
            let mut l = RatMatrix::zeros(dims[k + 2], dims[k]);
            for &(m, r, off) in &blocks[k] {
                if let Some(to) = find(k + 2, m, r + 1) {
                    for i in 0..prim_dims[m] {
                        l[(to + i, off + i)] = Rational::one();
                    }
                }
            }
            ops.push(l);
        }
        let mut pairings = Vec::new();
        for k in 0..=2 * d {
            let mut p = RatMatrix::zeros(dims[k], dims[2 * d - k]);
            for &(m, r, off) in &blocks[k] {
                if let Some(to) = find(2 * d - k, m, d - m - r) {
                    for i in 0..prim_dims[m] {
                        for j in 0..prim_dims[m] {
                            p[(off + i, to + j)] = forms[m][(i, j)].clone();
                        }
                    }
                }
            }
            pairings.push(p);
        }
        let mut inv = Vec::new();
        for (k, g) in changes.iter().enumerate() {
            if g.rows() != dims[k] || !g.is_square() {
                return Err(CoreError::Invalid(format!(
                    "base change {k} must be {0}x{0}",
                    dims[k]
                )));
            }
            inv.push(
                g.inverse()
                    .map_err(|_| CoreError::Invalid(format!("base change {k} is singular")))?,
            );
        }
        let ops = ops
            .iter()
            .enumerate()
            .map(|(k, l)| &(&changes[k + 2] * l) * &inv[k])
            .collect();
        let pairings = pairings
            .iter()
            .enumerate()
            .map(|(k, p)| &(&inv[k].transpose() * p) * &inv[2 * d - k])
            .collect();
        Self::new(d, dims, ops, Some(pairings))
    }
}

pub fn lefschetz_projectors(ld: &LefschetzData, n: usize) -> Result<LefschetzProjectors> {
    if n > ld.d {
        return Err(CoreError::Invalid(format!(
            "degree {n} exceeds the dimension {}",
            ld.d
        )));
    }
    let dim = ld.dims[n];
    let pieces: Vec<RatMatrix> = (0..=n / 2)
        .map(|r| &ld.power(n - 2 * r, r) * &ld.primitive_basis(n - 2 * r))
        .collect();
    let basis = pieces
        .iter()
        .fold(RatMatrix::zeros(dim, 0), |acc, b| acc.hstack(b));
    if basis.cols() != dim {
        return Err(CoreError::HardLefschetzFails(n));
    }
    let inv = basis
        .inverse()
        .map_err(|_| CoreError::HardLefschetzFails(n))?;
    let mut projectors = Vec::new();
    let mut s = RatMatrix::zeros(dim, dim);
    let mut start = 0;
    for (r, b) in pieces.iter().enumerate() {
        let diag: Vec<Rational> = (0..dim)
            .map(|i| {
                if (start..start + b.cols()).contains(&i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let p = &(&basis * &RatMatrix::diagonal(&diag)) * &inv;
        s = if r % 2 == 0 { &s + &p } else { &s - &p };
        projectors.push(p);
        start += b.cols();
    }
    Ok(LefschetzProjectors { n, projectors, s })
}
