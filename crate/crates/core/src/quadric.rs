//! Symmetric matrices of forms (quadric bundles over projective space):
//! discriminants, pointwise ranks, ordinariness over prime fields, and Betti
//! bookkeeping.

use num_traits::Zero;
use phantom_arith::groebner::is_unit_ideal;
use phantom_arith::{BigRational, Field, Fp, Matrix, MultiPoly, UniPoly};

use crate::{CoreError, Result};

/// A scalar field with a known characteristic (0 for `Q`).
pub trait FormField: Field + Send + Sync {
    /// Characteristic of the field this value lives in; 0 also for unbound residues.
    fn characteristic(&self) -> u64;
}

impl FormField for BigRational {
    fn characteristic(&self) -> u64 {
        0
    }
}

impl FormField for Fp {
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
}

/// Isomorphism type of a fiber quadric, read off from its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberClass {
    Smooth,
    UniqueSingularPoint,
    SingularAlongLine,
}

impl FiberClass {
    pub fn from_rank(rank: usize, size: usize) -> Self {
        if rank >= size {
            FiberClass::Smooth
        } else if rank + 1 == size {
            FiberClass::UniqueSingularPoint
        } else {
            FiberClass::SingularAlongLine
        }
    }
}

/// A symmetric `size x size` matrix of forms on `P^{vars-1}`; entry `(i, j)`
/// is homogeneous of degree `w_i + w_j + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricFormMatrix<F: FormField> {
    vars: Vec<String>,
    entries: Vec<Vec<MultiPoly<F>>>,
    weights: Vec<i64>,
    twist: i64,
}

impl<F: FormField> SymmetricFormMatrix<F> {
    pub fn new(
        vars: Vec<String>,
        entries: Vec<Vec<MultiPoly<F>>>,
        weights: Vec<i64>,
        twist: i64,
    ) -> Result<Self> {
        let size = entries.len();
        if size == 0 {
            return Err(CoreError::Invalid("empty matrix".into()));
        }
        if weights.len() != size {
            return Err(CoreError::Invalid(format!(
                "{} weights for a {size}x{size} matrix",
                weights.len()
            )));
        }
        let mut all_zero = true;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != size {
                return Err(CoreError::Invalid(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.nvars() != vars.len() {
                    return Err(CoreError::Invalid(format!(
                        "entry ({i},{j}) has the wrong number of variables"
                    )));
                }
                if *e != entries[j][i] {
                    return Err(CoreError::Invalid(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
                if e.is_zero() {
                    continue;
                }
                all_zero = false;
                let want = weights[i] + weights[j] + twist;
                if e.homogeneous_degree().map(i64::from) != Some(want) {
                    return Err(CoreError::Invalid(format!(
                        "entry ({i},{j}) must be homogeneous of degree {want} or zero"
                    )));
                }
            }
        }
        if all_zero {
            return Err(CoreError::Invalid("matrix is identically zero".into()));
        }
        Ok(SymmetricFormMatrix {
            vars,
            entries,
            weights,
            twist,
        })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn entries(&self) -> &[Vec<MultiPoly<F>>] {
        &self.entries
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Expected degree `2 sum(w) + size * t` of the discriminant.
    pub fn expected_degree(&self) -> i64 {
        2 * self.weights.iter().sum::<i64>() + self.size() as i64 * self.twist
    }

    /// The characteristic of the coefficient field, 0 if no coefficient is bound.
    pub fn characteristic(&self) -> u64 {
        self.entries
            .iter()
            .flatten()
            .flat_map(|e| e.terms().map(|(_, c)| c.characteristic()))
            .find(|&c| c != 0)
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[F]) -> Matrix<F> {
        let n = self.size();
        Matrix::new(
            n,
            n,
            self.entries
                .iter()
                .flatten()
                .map(|e| e.eval(point))
                .collect(),
        )
        .expect("square")
    }

    fn map_entries<G: FormField>(
        &self,
        f: impl Fn(&MultiPoly<F>) -> Option<MultiPoly<G>>,
    ) -> Option<SymmetricFormMatrix<G>> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&f).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(SymmetricFormMatrix {
            vars: self.vars.clone(),
            entries,
            weights: self.weights.clone(),
            twist: self.twist,
        })
    }
}

impl SymmetricFormMatrix<BigRational> {
    /// Entries reduced modulo `p`; `None` if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<SymmetricFormMatrix<Fp>> {
        self.map_entries(|e| e.reduce_mod(p))
    }
}

fn cofactor_det<F: Field>(m: &[Vec<MultiPoly<F>>], nvars: usize) -> MultiPoly<F> {
    let n = m.len();
    match n {
        0 => MultiPoly::one(nvars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = MultiPoly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly<F>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &cofactor_det(&minor, nvars);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Fraction-free elimination; every division is exact.
fn bareiss_det<F: Field>(m: &[Vec<MultiPoly<F>>], nvars: usize) -> MultiPoly<F> {
    let n = m.len();
    let mut a: Vec<Vec<MultiPoly<F>>> = m.to_vec();
    let mut sign_neg = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero(nvars);
        };
        if piv != k {
            a.swap(piv, k);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_neg {
        -&det
    } else {
        det
    }
}

/// `det` of the matrix of forms.
pub fn discriminant<F: FormField>(q: &SymmetricFormMatrix<F>) -> MultiPoly<F> {
    let nvars = q.vars.len();
    if q.size() <= 5 {
        cofactor_det(&q.entries, nvars)
    } else {
        bareiss_det(&q.entries, nvars)
    }
}

/// Rank of the fiber at a projective point, with its [`FiberClass`].
pub fn rank_at<F: FormField>(
    q: &SymmetricFormMatrix<F>,
    point: &[F],
) -> Result<(usize, FiberClass)> {
    if point.len() != q.vars.len() {
        return Err(CoreError::Invalid(format!(
            "point has {} coordinates, expected {}",
            point.len(),
            q.vars.len()
        )));
    }
    let ch = q.characteristic();
    if point
        .iter()
        .any(|c| c.characteristic() != 0 && ch != 0 && c.characteristic() != ch)
    {
        return Err(phantom_arith::ArithError::FieldMismatch.into());
    }
    if point.iter().all(|c| c.is_zero()) {
        return Err(CoreError::Invalid(
            "the zero vector is not a projective point".into(),
        ));
    }
    let r = q.eval(point).rank();
    Ok((r, FiberClass::from_rank(r, q.size())))
}

/// Kernel basis (columns) and the invertible symmetric form induced on a
/// complement of the kernel spanned by standard basis vectors.
pub fn nondegenerate_part<F: Field>(a: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if !a.is_square() || !a.is_symmetric() {
        return Err(CoreError::Invalid(
            "nondegenerate_part needs a symmetric matrix".into(),
        ));
    }
    let n = a.rows();
    let kernel = a.kernel_basis();
    let mut span = kernel.clone();
    let mut chosen = Vec::new();
    for i in 0..n {
        if span.cols() == n {
            break;
        }
        let e = Matrix::from_columns(
            n,
            &[(0..n)
                .map(|k| if k == i { F::one() } else { F::zero() })
                .collect()],
        );
        let candidate = span.hstack(&e);
        if candidate.rank() > span.cols() {
            span = candidate;
            chosen.push(i);
        }
    }
    let c = Matrix::identity(n).select_columns(&chosen);
    let core = &(&c.transpose() * a) * &c;
    Ok((core, kernel))
}

/// Budgets for [`is_ordinary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of points of `P^2(F_p)` to enumerate.
    pub point_limit: u64,
    /// Worker threads for the enumeration.
    pub jobs: usize,
    /// Cap on S-pair reductions in the Groebner certificate.
    pub max_reductions: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            point_limit: 10_000_000,
            jobs: 1,
            max_reductions: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrdinaryReport {
    pub ordinary: bool,
    pub p: u64,
    /// Normalized coordinates of the first singular `F_p`-point of `V(delta)`.
    pub witness: Option<Vec<u64>>,
    /// Number of `F_p`-points inspected (0 if the enumeration was skipped).
    pub points_checked: u64,
    /// Whether the Groebner certificate ran (it is skipped once a witness is found).
    pub certified: bool,
}

/// The `i`-th point of `P^2(F_p)` in the order `(1:y:z)`, `(0:1:z)`, `(0:0:1)`.
fn nth_point(i: u64, p: u64) -> [u64; 3] {
    if i < p * p {
        [1, i / p, i % p]
    } else if i < p * p + p {
        [0, 1, i - p * p]
    } else {
        [0, 0, 1]
    }
}

fn first_singular(polys: &[MultiPoly<Fp>], p: u64, range: std::ops::Range<u64>) -> Option<u64> {
    range.into_iter().find(|&i| {
        let pt: Vec<Fp> = nth_point(i, p)
            .iter()
            .map(|&c| Fp::new(c as i64, p))
            .collect();
        polys.iter().all(|f| f.eval(&pt).is_zero())
    })
}

/// Whether `V(det q)` is a smooth curve in `P^2` over the algebraic closure of `F_p`.
pub fn is_ordinary(q: &SymmetricFormMatrix<Fp>, opts: &SearchOptions) -> Result<OrdinaryReport> {
    let p = q.characteristic();
    if p == 0 {
        return Err(CoreError::Invalid(
            "entries have no bound prime field".into(),
        ));
    }
    if p == 2 {
        return Err(CoreError::Invalid(
            "characteristic 2 is not supported".into(),
        ));
    }
    if q.vars.len() != 3 {
        return Err(CoreError::Invalid(
            "ordinariness is tested on the projective plane".into(),
        ));
    }
    let delta = discriminant(q);
    if delta.is_zero() {
        return Err(CoreError::ZeroDiscriminant);
    }
    let bind = |f: MultiPoly<Fp>| f.map(|c| c.bind(p));
    let polys: Vec<MultiPoly<Fp>> = std::iter::once(delta.clone())
        .chain((0..3).map(|v| delta.partial(v)))
        .map(bind)
        .collect();
    let mut report = OrdinaryReport {
        ordinary: true,
        p,
        witness: None,
        points_checked: 0,
        certified: false,
    };
    if delta.total_degree() == Some(0) {
        report.certified = true;
        return Ok(report);
    }
    let total = p * p + p + 1;
    if total <= opts.point_limit {
        let jobs = opts.jobs.max(1) as u64;
        let chunk = total.div_ceil(jobs);
        let hit = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|k| {
                    let polys = &polys;
                    let range = (k * chunk).min(total)..((k + 1) * chunk).min(total);
                    s.spawn(move || first_singular(polys, p, range))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .find_map(|r| r)
        });
        report.points_checked = total;
        if let Some(i) = hit {
            report.ordinary = false;
            report.witness = Some(nth_point(i, p).to_vec());
            return Ok(report);
        }
    }
    let one = Fp::new(1, p);
    let zero = Fp::new(0, p);
    // affine chart z = 1
    let chart: Vec<MultiPoly<Fp>> = polys.iter().map(|f| f.specialize(2, &one)).collect();
    let mut singular = !is_unit_ideal(&chart, opts.max_reductions)?;
    if !singular {
        // the line z = 0 in the chart y = 1
        let g = polys
            .iter()
            .map(|f| {
                f.specialize(2, &zero)
                    .specialize(1, &one)
                    .to_univariate(0)
                    .expect("only x remains")
            })
            .fold(UniPoly::<Fp>::zero(), |acc, u| acc.gcd(&u));
        singular = g.deg() > 0 || g.is_zero();
    }
    if !singular {
        let pt = [one, zero, zero];
        singular = polys.iter().all(|f| f.eval(&pt).is_zero());
    }
    report.ordinary = !singular;
    report.certified = true;
    Ok(report)
}

/// Ordinariness of the reduction of a rational matrix at the prime `p`.
pub fn is_ordinary_at(
    q: &SymmetricFormMatrix<BigRational>,
    p: u64,
    opts: &SearchOptions,
) -> Result<OrdinaryReport> {
    if !phantom_arith::rational::is_prime_u64(p) {
        return Err(phantom_arith::ArithError::NotPrime(p.to_string()).into());
    }
    let red = q
        .reduce_mod(p)
        .ok_or_else(|| CoreError::Invalid(format!("a denominator is divisible by {p}")))?;
    if red.entries.iter().flatten().all(|e| e.is_zero()) {
        return Err(CoreError::ZeroDiscriminant);
    }
    is_ordinary(&red, opts)
}

fn betti_at(b: &[u64], k: i64) -> u64 {
    if k < 0 {
        0
    } else {
        b.get(k as usize).copied().unwrap_or(0)
    }
}

fn check_betti(b: &[u64], what: &str) -> Result<()> {
    if b.len().is_multiple_of(2) {
        return Err(CoreError::Invalid(format!(
            "{what} must have odd length, got {}",
            b.len()
        )));
    }
    Ok(())
}

/// Whether `b_k = b_{2n-k}` for all `k`.
pub fn is_poincare_symmetric(b: &[u64]) -> bool {
    b.iter().eq(b.iter().rev())
}

/// Alternating sum of Betti numbers.
pub fn euler_characteristic(b: &[u64]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Betti numbers of a smooth quadric fibration of relative dimension `m` over `S`.
///
/// For even `m`, `b_tilde` holds the Betti numbers of the double cover of `S`
/// parametrizing the rulings of the fibers.
pub fn smooth_fibration_betti(b_s: &[u64], m: u32, b_tilde: Option<&[u64]>) -> Result<Vec<u64>> {
    check_betti(b_s, "base Betti vector")?;
    if m == 0 {
        return Err(CoreError::Invalid(
            "relative dimension must be at least 1".into(),
        ));
    }
    let cover = if m.is_multiple_of(2) {
        let bt = b_tilde.ok_or(CoreError::MissingDoubleCoverData)?;
        if bt.len() != b_s.len() {
            return Err(CoreError::Invalid(
                "double-cover Betti vector must match the base length".into(),
            ));
        }
        Some(bt)
    } else {
        None
    };
    let len = b_s.len() + 2 * m as usize;
    Ok((0..len as i64)
        .map(|q| {
            (0..=m as i64)
                .filter(|j| 2 * j <= q)
                .map(|j| match cover {
                    Some(bt) if 2 * j == m as i64 => betti_at(bt, q - 2 * j),
                    _ => betti_at(b_s, q - 2 * j),
                })
                .sum()
        })
        .collect())
}

/// How the genus of the discriminant curve is supplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusSource {
    /// A smooth plane curve of this degree.
    PlaneDegree(u64),
    Genus(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymReport {
    pub genus: u64,
    pub prym_dim: u64,
    /// The degree `2n + 3` of the middle cohomology.
    pub middle_degree: u64,
    pub middle_betti: u64,
}

pub fn prym_bookkeeping(
    b_s: &[u64],
    genus: GenusSource,
    n: u64,
    connected: bool,
) -> Result<PrymReport> {
    check_betti(b_s, "surface Betti vector")?;
    let g = match genus {
        GenusSource::PlaneDegree(0) => {
            return Err(CoreError::InvalidGenus("plane curve of degree 0".into()))
        }
        GenusSource::PlaneDegree(d) => (d - 1) * d.saturating_sub(2) / 2,
        GenusSource::Genus(g) => g,
    };
    let prym_dim = if connected {
        if g < 1 {
            return Err(CoreError::InvalidGenus(format!(
                "genus {g} has no connected double-cover Prym"
            )));
        }
        g - 1
    } else {
        g
    };
    Ok(PrymReport {
        genus: g,
        prym_dim,
        middle_degree: 2 * n + 3,
        middle_betti: 2 * prym_dim + betti_at(b_s, 1) + betti_at(b_s, 3),
    })
}

/// Summand dimensions of the odd middle cohomology: the Prym part, then
/// `b_1(S)` and `b_3(S)` as the base dimension allows.
pub fn vial_table(b_s: &[u64], dim_s: u32, prym_dim: u64) -> Result<Vec<(&'static str, u64)>> {
    let mut out = vec![("prym", 2 * prym_dim)];
    match dim_s {
        0 => {}
        1 => out.push(("b1", betti_at(b_s, 1))),
        2 => {
            out.push(("b1", betti_at(b_s, 1)));
            out.push(("b3", betti_at(b_s, 3)));
        }
        _ => {
            return Err(CoreError::Invalid(format!(
                "base dimension {dim_s} exceeds 2"
            )))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use phantom_arith::{rat, rat_int, QMultiPoly};

    fn xyz() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn qform(
        rows: &[&[&str]],
        weights: Vec<i64>,
        twist: i64,
    ) -> Result<SymmetricFormMatrix<BigRational>> {
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| QMultiPoly::parse(s, &["x", "y", "z"]).unwrap())
                    .collect()
            })
            .collect();
        SymmetricFormMatrix::new(xyz(), entries, weights, twist)
    }

    fn fpform(rows: &[&[&str]], weights: Vec<i64>, twist: i64, p: u64) -> SymmetricFormMatrix<Fp> {
        qform(rows, weights, twist).unwrap().reduce_mod(p).unwrap()
    }

    fn diag_xyz() -> SymmetricFormMatrix<BigRational> {
        qform(
            &[&["x", "0", "0"], &["0", "y", "0"], &["0", "0", "z"]],
            vec![0, 0, 0],
            1,
        )
        .unwrap()
    }

    fn pt(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn validation() {
        assert!(qform(&[&["x", "y"], &["x", "z"]], vec![0, 0], 1).is_err());
        assert!(qform(&[&["x", "0"], &["0", "y^2"]], vec![0, 0], 1).is_err());
        assert!(qform(&[&["0", "0"], &["0", "0"]], vec![0, 0], 1).is_err());
        assert!(qform(&[&["x"]], vec![0, 0], 1).is_err());
    }

    #[test]
    fn discriminant_examples() {
        let id = qform(
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
            vec![0, 0, 0],
            0,
        )
        .unwrap();
        assert_eq!(discriminant(&id), QMultiPoly::one(3));
        assert_eq!(
            discriminant(&diag_xyz()),
            QMultiPoly::parse("x*y*z", &["x", "y", "z"]).unwrap()
        );
        let g = fpform(
            &[
                &["3x + y", "x - 2z", "5y + z"],
                &["x - 2z", "7z + 4x", "y - x"],
                &["5y + z", "y - x", "11x + 13y + 17z"],
            ],
            vec![0, 0, 0],
            1,
            101,
        );
        let d = discriminant(&g);
        assert_eq!(d.homogeneous_degree(), Some(3));
        assert_eq!(g.expected_degree(), 3);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let names = ["x", "y", "z"];
        let rows: Vec<Vec<QMultiPoly>> = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let (a, b) = (i.min(j) as i64, i.max(j) as i64);
                        let s = format!("{}x + {}y - {}z", a + 1, b * b - a, (a * b) % 5);
                        QMultiPoly::parse(&s, &names).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(bareiss_det(&rows, 3), cofactor_det(&rows, 3));
    }

    #[test]
    fn rank_examples() {
        let id = qform(
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
            vec![0, 0, 0],
            0,
        )
        .unwrap();
        assert_eq!(
            rank_at(&id, &pt(&[2, 3, 5])).unwrap(),
            (3, FiberClass::Smooth)
        );
        let d = diag_xyz();
        assert_eq!(
            rank_at(&d, &pt(&[1, 1, 0])).unwrap(),
            (2, FiberClass::UniqueSingularPoint)
        );
        assert_eq!(
            rank_at(&d, &pt(&[1, 0, 0])).unwrap(),
            (1, FiberClass::SingularAlongLine)
        );
        assert!(rank_at(&d, &pt(&[0, 0, 0])).is_err());
        let f = d.reduce_mod(7).unwrap();
        let wrong = [Fp::new(1, 5), Fp::new(1, 5), Fp::new(0, 5)];
        assert_eq!(
            rank_at(&f, &wrong),
            Err(CoreError::Arith(phantom_arith::ArithError::FieldMismatch))
        );
    }

    #[test]
    fn nondegenerate_examples() {
        let a = Matrix::diagonal(&[rat(1, 1), rat(2, 1), rat(0, 1)]);
        let (core, ker) = nondegenerate_part(&a).unwrap();
        assert_eq!(core, Matrix::diagonal(&[rat(1, 1), rat(2, 1)]));
        assert_eq!(ker.columns(), vec![vec![rat(0, 1), rat(0, 1), rat(1, 1)]]);
        let (core, ker) = nondegenerate_part(&Matrix::<BigRational>::zeros(3, 3)).unwrap();
        assert_eq!((core.rows(), ker.cols()), (0, 3));
        let h = Matrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]])
            .unwrap();
        assert_eq!(nondegenerate_part(&h).unwrap().0, h);
    }

    fn fermat_f7() -> SymmetricFormMatrix<Fp> {
        // [[a, b, c], [b, z, 1], [c, 1, 0]] has det -a + 2bc - c^2 z
        fpform(
            &[
                &[
                    "2*(x^2 + y*z)*(x - y) - (x - y)^2*z - x^3 - y^3 - z^3",
                    "x^2 + y*z",
                    "x - y",
                ],
                &["x^2 + y*z", "z", "1"],
                &["x - y", "1", "0"],
            ],
            vec![1, 0, -1],
            1,
            7,
        )
    }

    #[test]
    fn ordinary_examples() {
        let opts = SearchOptions::default();
        let f = fermat_f7();
        let fermat = QMultiPoly::parse("x^3 + y^3 + z^3", &["x", "y", "z"])
            .unwrap()
            .reduce_mod(7)
            .unwrap();
        assert_eq!(discriminant(&f), fermat);
        let r = is_ordinary(&f, &opts).unwrap();
        assert!(r.ordinary && r.certified && r.witness.is_none());

        let d = diag_xyz().reduce_mod(7).unwrap();
        let r = is_ordinary(&d, &opts).unwrap();
        assert!(!r.ordinary);
        assert_eq!(r.witness, Some(vec![1, 0, 0]));

        let nonreduced = fpform(
            &[&["x", "0", "0"], &["0", "x", "0"], &["0", "0", "y"]],
            vec![0, 0, 0],
            1,
            7,
        );
        assert!(!is_ordinary(&nonreduced, &opts).unwrap().ordinary);
    }

    #[test]
    fn ordinary_without_enumeration() {
        let opts = SearchOptions {
            point_limit: 0,
            ..Default::default()
        };
        let r = is_ordinary(&fermat_f7(), &opts).unwrap();
        assert!(r.ordinary && r.points_checked == 0);
        let d = diag_xyz().reduce_mod(7).unwrap();
        assert!(!is_ordinary(&d, &opts).unwrap().ordinary);
        let tiny = SearchOptions {
            point_limit: 0,
            max_reductions: 0,
            jobs: 1,
        };
        assert!(matches!(
            is_ordinary(&fermat_f7(), &tiny),
            Err(CoreError::Arith(
                phantom_arith::ArithError::SearchBoundExceeded(_)
            ))
        ));
    }

    #[test]
    fn enumeration_is_partition_independent() {
        let d = diag_xyz().reduce_mod(11).unwrap();
        let one = is_ordinary(
            &d,
            &SearchOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        for jobs in 2..6 {
            assert_eq!(
                is_ordinary(
                    &d,
                    &SearchOptions {
                        jobs,
                        ..Default::default()
                    }
                )
                .unwrap(),
                one
            );
        }
    }

    #[test]
    fn ordinary_errors() {
        let zero_det = qform(&[&["x", "x"], &["x", "x"]], vec![0, 0], 1)
            .unwrap()
            .reduce_mod(7)
            .unwrap();
        assert_eq!(
            is_ordinary(&zero_det, &SearchOptions::default()),
            Err(CoreError::ZeroDiscriminant)
        );
        let even = diag_xyz().reduce_mod(2).unwrap();
        assert!(matches!(
            is_ordinary(&even, &SearchOptions::default()),
            Err(CoreError::Invalid(_))
        ));
        let r = is_ordinary_at(&diag_xyz(), 5, &SearchOptions::default()).unwrap();
        assert!(!r.ordinary);
    }

    #[test]
    fn betti_examples() {
        let p2 = [1, 0, 1, 0, 1];
        assert_eq!(
            smooth_fibration_betti(&p2, 1, None).unwrap(),
            vec![1, 0, 2, 0, 2, 0, 1]
        );
        let b = smooth_fibration_betti(&p2, 3, None).unwrap();
        assert_eq!(b[5], 0);
        assert_eq!(euler_characteristic(&b), 4 * 3);
        assert_eq!(
            smooth_fibration_betti(&p2, 2, None),
            Err(CoreError::MissingDoubleCoverData)
        );
        // trivial cover of P^1: P^1 x (P^1 x P^1)
        let b = smooth_fibration_betti(&[1, 0, 1], 2, Some(&[2, 0, 2])).unwrap();
        assert_eq!(b, vec![1, 0, 3, 0, 3, 0, 1]);
        assert!(is_poincare_symmetric(&b));
    }

    #[test]
    fn prym_examples() {
        let p2 = [1, 0, 1, 0, 1];
        let r = prym_bookkeeping(&p2, GenusSource::PlaneDegree(5), 0, true).unwrap();
        assert_eq!(
            (r.genus, r.prym_dim, r.middle_degree, r.middle_betti),
            (6, 5, 3, 10)
        );
        let r = prym_bookkeeping(&p2, GenusSource::PlaneDegree(3), 0, true).unwrap();
        assert_eq!((r.genus, r.prym_dim, r.middle_betti), (1, 0, 0));
        let abelian = [1, 4, 6, 4, 1];
        let r = prym_bookkeeping(&abelian, GenusSource::Genus(2), 1, true).unwrap();
        assert_eq!((r.middle_degree, r.middle_betti), (5, 10));
        assert!(matches!(
            prym_bookkeeping(&p2, GenusSource::PlaneDegree(2), 0, true),
            Err(CoreError::InvalidGenus(_))
        ));
        let r = prym_bookkeeping(&p2, GenusSource::PlaneDegree(2), 0, false).unwrap();
        assert_eq!(r.prym_dim, 0);
    }

    #[test]
    fn vial_examples() {
        assert_eq!(vial_table(&[1], 0, 5).unwrap(), vec![("prym", 10)]);
        assert_eq!(
            vial_table(&[1, 0, 1, 0, 1], 2, 5).unwrap(),
            vec![("prym", 10), ("b1", 0), ("b3", 0)]
        );
        assert_eq!(
            vial_table(&[1, 6, 1], 1, 2).unwrap(),
            vec![("prym", 4), ("b1", 6)]
        );
        assert!(vial_table(&[1], 3, 0).is_err());
    }
}
