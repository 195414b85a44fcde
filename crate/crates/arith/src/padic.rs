//! Factorization shape over Q_p of a squarefree monic integer polynomial.
//!
//! The étale algebra `K = Q[T]/(f)` is given a p-maximal order by the Round 2
//! algorithm (p-radical, ring of multipliers, repeat). The primitive
//! idempotents of `O/pO` then correspond to the irreducible factors of `f`
//! over Q_p. For each one we read off the local degree, the residue degree,
//! and the valuation of the roots from the local norm of `T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fp_factor::roots;
use crate::hnf::{det_int, hnf};
use crate::rational::{is_prime_u64, lcm_all, ord_p_int};
use crate::scalar::Fp;
use crate::{ArithError, FpMatrix, QPoly, RatMatrix};

/// One irreducible factor of `f` over Q_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicFactor {
    /// Degree of the factor (local degree `e * f`).
    pub degree: usize,
    /// `ord_p` of each of its roots.
    pub valuation: BigRational,
    pub ramification: usize,
    pub residue_degree: usize,
}

/// A full-rank order in `Q[T]/(f)`, with rows of `basis` in power-basis coordinates.
struct Order {
    f: QPoly,
    n: usize,
    basis: RatMatrix,
    inv: RatMatrix,
    /// `table[i][j]` = coordinates of `w_i * w_j`.
    table: Vec<Vec<Vec<BigInt>>>,
}

impl Order {
    fn new(f: &QPoly, basis: RatMatrix) -> Self {
        let n = f.deg();
        let inv = basis.inverse().expect("order basis is nonsingular");
        let elems: Vec<QPoly> = (0..n).map(|i| QPoly::new(basis.row(i))).collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = (&elems[i] * &elems[j]).rem(f);
                let c = coords_int(&prod, n, &inv);
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        Order {
            f: f.clone(),
            n,
            basis,
            inv,
            table,
        }
    }

    /// Coordinates of a power-basis element known to lie in the order.
    fn coords(&self, z: &QPoly) -> Vec<BigInt> {
        coords_int(z, self.n, &self.inv)
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        self.mul_exact(a, b)
            .iter()
            .map(|x| x.mod_floor(m))
            .collect()
    }

    fn mul_exact(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &s * t;
                    }
                }
            }
        }
        out
    }

    fn pow(&self, a: &[BigInt], e: &BigInt, m: &BigInt) -> Vec<BigInt> {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result, m);
            if e.bit(i) {
                result = self.mul(&result, a, m);
            }
        }
        result.iter().map(|x| x.mod_floor(m)).collect()
    }

    fn one(&self) -> Vec<BigInt> {
        self.coords(&QPoly::one())
    }

    fn unit(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        v[i] = BigInt::one();
        v
    }

    /// Matrix over F_p whose columns are `g(w_i)` for a map `g` given on coordinates.
    fn fp_columns(&self, p: u64, g: impl Fn(&[BigInt]) -> Vec<BigInt>) -> FpMatrix {
        let cols: Vec<Vec<Fp>> = (0..self.n)
            .map(|i| {
                g(&self.unit(i))
                    .iter()
                    .map(|x| Fp::from_bigint(x, p))
                    .collect()
            })
            .collect();
        FpMatrix::from_columns(cols[0].len(), &cols)
    }

    /// Basis of the p-radical modulo p, as coordinate vectors in the order.
    fn radical_mod_p(&self, p: u64) -> Vec<Vec<BigInt>> {
        let pb = BigInt::from(p);
        let mut q = pb.clone();
        while q < BigInt::from(self.n) {
            q *= &pb;
        }
        let frob = self.fp_columns(p, |x| self.pow(x, &q, &pb));
        kernel_vectors(&frob)
    }

    /// The ring of multipliers of the p-radical; `None` when it equals `self`.
    fn enlarge(&self, p: u64) -> Option<Order> {
        let pb = BigInt::from(p);
        let mut gens = self.radical_mod_p(p);
        gens.extend((0..self.n).map(|i| self.unit(i).iter().map(|x| x * &pb).collect()));
        let ideal = hnf(&gens);
        let ideal_m = RatMatrix::from_rows(
            ideal
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        )
        .expect("square");
        let ideal_inv = ideal_m.inverse().expect("full-rank ideal");
        // x -> (coordinates of x * beta_j in the ideal basis) mod p
        let map = self.fp_columns(p, |x| {
            let mut out = Vec::with_capacity(self.n * self.n);
            for beta in &ideal {
                let prod = self.mul_exact(x, beta);
                let row: Vec<BigRational> = prod
                    .iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect();
                for k in 0..self.n {
                    let c: BigRational = (0..self.n).map(|i| &row[i] * &ideal_inv[(i, k)]).sum();
                    out.push(c.to_integer());
                }
            }
            out
        });
        let kernel = kernel_vectors(&map);
        if kernel.is_empty() {
            return None;
        }
        let mut gens = kernel;
        gens.extend((0..self.n).map(|i| self.unit(i).iter().map(|x| x * &pb).collect()));
        let u = hnf(&gens);
        // new basis = (1/p) * U * B in power coordinates, renormalized by HNF
        let pr = BigRational::from_integer(pb.clone());
        let rows: Vec<Vec<BigRational>> = u
            .iter()
            .map(|r| {
                (0..self.n)
                    .map(|k| {
                        let s: BigRational = (0..self.n)
                            .map(|i| BigRational::from_integer(r[i].clone()) * &self.basis[(i, k)])
                            .sum();
                        s / &pr
                    })
                    .collect()
            })
            .collect();
        Some(Order::new(&self.f, canonical_basis(&rows)))
    }
}

/// Integer coordinates of `z` with respect to the basis whose inverse is `inv`.
fn coords_int(z: &QPoly, n: usize, inv: &RatMatrix) -> Vec<BigInt> {
    let v: Vec<BigRational> = (0..n).map(|i| z.coeff(i)).collect();
    (0..n)
        .map(|k| {
            let c: BigRational = (0..n).map(|i| &v[i] * &inv[(i, k)]).sum();
            debug_assert!(c.is_integer(), "element not in the order");
            c.to_integer()
        })
        .collect()
}

/// HNF of rational row vectors after clearing a common denominator.
fn canonical_basis(rows: &[Vec<BigRational>]) -> RatMatrix {
    let den = lcm_all(rows.iter().flatten().map(|x| x.denom()).collect::<Vec<_>>());
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let h = hnf(&ints);
    let d = BigRational::from_integer(den);
    RatMatrix::from_rows(
        h.iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::from_integer(x.clone()) / &d)
                    .collect()
            })
            .collect(),
    )
    .expect("square")
}

/// Kernel of an F_p matrix, lifted to nonnegative integer vectors.
fn kernel_vectors(m: &FpMatrix) -> Vec<Vec<BigInt>> {
    m.kernel_basis()
        .columns()
        .iter()
        .map(|c| c.iter().map(|x| BigInt::from(x.value())).collect())
        .collect()
}

/// Primitive idempotents of `O/pO`, as coordinate vectors mod p.
fn primitive_idempotents(o: &Order, p: u64) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    // x^p = x cuts out the span of the primitive idempotents
    let fixed = o.fp_columns(p, |x| {
        let y = o.pow(x, &pb, &pb);
        y.iter()
            .zip(x)
            .map(|(a, b)| (a - b).mod_floor(&pb))
            .collect()
    });
    let split_basis = kernel_vectors(&fixed);
    let one = o.one().iter().map(|x| x.mod_floor(&pb)).collect::<Vec<_>>();
    let mut idems = vec![one];
    for b in &split_basis {
        if idems.len() == split_basis.len() {
            break;
        }
        let mult = o.fp_columns(p, |x| o.mul(b, x, &pb));
        let minpoly = mult.min_poly().expect("square");
        let eig: Vec<BigInt> = roots(&minpoly.bind(p))
            .iter()
            .map(|c| BigInt::from(c.value()))
            .collect();
        let mut lagrange = Vec::new();
        for c in &eig {
            let mut e = o.one();
            for c2 in eig.iter().filter(|c2| *c2 != c) {
                let inv = (c - c2).mod_floor(&pb).modinv(&pb).expect("distinct roots");
                let factor: Vec<BigInt> = b
                    .iter()
                    .zip(o.one())
                    .map(|(bi, oi)| ((bi - c2 * &oi) * &inv).mod_floor(&pb))
                    .collect();
                e = o.mul(&e, &factor, &pb);
            }
            lagrange.push(e);
        }
        let mut refined = Vec::new();
        for e in &idems {
            for l in &lagrange {
                let prod = o.mul(e, l, &pb);
                if prod.iter().any(|x| !x.is_zero()) {
                    refined.push(prod);
                }
            }
        }
        idems = refined;
    }
    idems
}

fn fp_rank_of_products(o: &Order, e: &[BigInt], vs: &[Vec<BigInt>], p: u64) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let pb = BigInt::from(p);
    let cols: Vec<Vec<Fp>> = vs
        .iter()
        .map(|v| {
            o.mul(e, v, &pb)
                .iter()
                .map(|x| Fp::from_bigint(x, p))
                .collect()
        })
        .collect();
    FpMatrix::from_columns(o.n, &cols).rank()
}

/// Irreducible factors of `f` over Q_p: degree, root valuation, ramification
/// and residue degree, sorted by valuation then degree.
pub fn factor_over_qp(f: &QPoly, p: u64) -> Result<Vec<PadicFactor>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if !is_prime_u64(p) {
        return Err(ArithError::NotPrime(p.to_string()));
    }
    if !f.is_monic() || !f.is_integral() {
        return Err(ArithError::Parse(
            "expected a monic integer polynomial".into(),
        ));
    }
    if f.coeff(0).is_zero() {
        return Err(ArithError::ZeroInput);
    }
    if !f.is_squarefree() {
        return Err(ArithError::NotSquarefree);
    }
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut order = Order::new(f, RatMatrix::identity(n));
    while let Some(bigger) = order.enlarge(p) {
        order = bigger;
    }
    let pb = BigInt::from(p);
    let radical = order.radical_mod_p(p);
    let idems = primitive_idempotents(&order, p);
    let theta = order.coords(&QPoly::x().rem(f));

    let mut precision = 20 * (n + 1);
    let max_precision = precision << 6;
    'attempt: loop {
        if precision > max_precision {
            return Err(ArithError::PrecisionExhausted(format!(
                "local norms still vanish modulo {p}^{max_precision}"
            )));
        }
        let modulus = pb.pow(precision as u32);
        let mut out = Vec::new();
        for e0 in &idems {
            let degree = fp_rank_of_products(
                &order,
                e0,
                &(0..n).map(|i| order.unit(i)).collect::<Vec<_>>(),
                p,
            );
            let residue_degree = degree - fp_rank_of_products(&order, e0, &radical, p);
            let e = lift_idempotent(&order, e0, precision, &modulus);
            // theta * e + (1 - e) has determinant equal to the local norm of theta
            let one = order.one();
            let te = order.mul(&theta, &e, &modulus);
            let y: Vec<BigInt> = (0..n)
                .map(|k| (&te[k] + &one[k] - &e[k]).mod_floor(&modulus))
                .collect();
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|j| order.mul(&y, &order.unit(j), &modulus))
                .collect();
            let det = det_int(&rows).mod_floor(&modulus);
            if det.is_zero() {
                precision *= 2;
                continue 'attempt;
            }
            let ord = ord_p_int(&det, &pb)?;
            out.push(PadicFactor {
                degree,
                valuation: BigRational::new(BigInt::from(ord), BigInt::from(degree)),
                ramification: degree / residue_degree,
                residue_degree,
            });
        }
        out.sort_by(|a, b| {
            a.valuation
                .cmp(&b.valuation)
                .then(a.degree.cmp(&b.degree))
                .then(a.residue_degree.cmp(&b.residue_degree))
        });
        return Ok(out);
    }
}

/// Lift an idempotent of `O/pO` to `O/p^N O` by `e -> 3e^2 - 2e^3`.
fn lift_idempotent(o: &Order, e0: &[BigInt], precision: usize, modulus: &BigInt) -> Vec<BigInt> {
    let mut e = e0.to_vec();
    let mut reached = 1;
    while reached < precision {
        let e2 = o.mul(&e, &e, modulus);
        let e3 = o.mul(&e2, &e, modulus);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| (a * BigInt::from(3) - b * BigInt::from(2)).mod_floor(modulus))
            .collect();
        reached *= 2;
    }
    e
}

/// `ord_p` of every root of `f`, sorted, with multiplicity. Convenience for
/// comparisons with Newton polygons.
pub fn root_valuations(f: &QPoly, p: u64) -> Result<Vec<BigRational>, ArithError> {
    let mut out = Vec::new();
    for fac in factor_over_qp(f, p)? {
        for _ in 0..fac.degree {
            out.push(fac.valuation.clone());
        }
    }
    Ok(out)
}
