//! Dense matrices over a [`Field`].
//!
//! Subspaces are passed around as matrices whose columns form a basis; a
//! zero-dimensional subspace of `F^n` is an `n x 0` matrix.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::UniPoly;
use crate::rational::lcm_all;
use crate::scalar::{Field, Ring};
use crate::ArithError;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, ArithError> {
        if data.len() != rows * cols {
            return Err(ArithError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Build from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ArithError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from column vectors of length `n`.
    pub fn from_columns(n: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn map<G: Ring, M: Fn(&F) -> G>(&self, f: M) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Matrix product, checking shapes.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.cols != rhs.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| {
                    acc + self[(i, j)].clone() * v[j].clone()
                })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, p: &UniPoly<F>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::identity(n).scale(c);
        }
        acc
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = m[(r, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -r[(row, f)].clone();
            }
        }
        out
    }

    /// Columns spanning the column space (a subset of the original columns).
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    pub fn determinant(&self) -> Result<F, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            let inv = piv.inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(ArithError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    /// Some `X` with `self * X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>, ArithError> {
        if rhs.rows != self.rows {
            return Err(ArithError::DimensionMismatch("solve: row mismatch".into()));
        }
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Characteristic polynomial `det(T*I - self)` via Hessenberg reduction.
    pub fn char_poly(&self) -> Result<UniPoly<F>, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(
                "char_poly of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut h = self.clone();
        // similarity transform to upper Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h[(i, c)].is_zero()) else {
                continue;
            };
            if p != c + 1 {
                h.swap_rows(p, c + 1);
                h.swap_cols(p, c + 1);
            }
            let inv = h[(c + 1, c)].inverse().expect("nonzero pivot");
            for i in c + 2..n {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let f = h[(i, c)].clone() * inv.clone();
                for j in 0..n {
                    let v = h[(c + 1, j)].clone();
                    h[(i, j)] = h[(i, j)].clone() - f.clone() * v;
                }
                for r in 0..n {
                    let v = h[(r, i)].clone();
                    h[(r, c + 1)] = h[(r, c + 1)].clone() + f.clone() * v;
                }
            }
        }
        // p_k = char poly of the leading k x k block
        let x = UniPoly::<F>::x();
        let mut ps: Vec<UniPoly<F>> = vec![UniPoly::one()];
        for k in 1..=n {
            let diag = &x - &UniPoly::constant(h[(k - 1, k - 1)].clone());
            let mut pk = &diag * &ps[k - 1];
            let mut prod = F::one();
            for i in (1..k).rev() {
                prod = prod * h[(i, i - 1)].clone();
                let term = ps[i - 1].scale(&(prod.clone() * h[(i - 1, k - 1)].clone()));
                pk = &pk - &term;
            }
            ps.push(pk);
        }
        Ok(ps.pop().expect("nonempty"))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Minimal polynomial: first linear dependency among `I, M, M^2, ...`.
    pub fn min_poly(&self) -> Result<UniPoly<F>, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(
                "min_poly of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut powers: Vec<Vec<F>> = vec![Self::identity(n).data];
        let mut cur = Self::identity(n);
        for k in 1..=n {
            cur = &cur * self;
            let basis = Self::from_columns(n * n, &powers);
            let target = Self::from_columns(n * n, std::slice::from_ref(&cur.data));
            if let Some(sol) = basis.solve(&target)? {
                let mut coeffs: Vec<F> = (0..k).map(|i| -sol[(i, 0)].clone()).collect();
                coeffs.push(F::one());
                return Ok(UniPoly::new(coeffs));
            }
            powers.push(cur.data.clone());
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// Matrix of `self` on the subspace spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &Self) -> Result<Self, ArithError> {
        if !self.is_square() || basis.rows != self.rows {
            return Err(ArithError::DimensionMismatch("restrict: shape".into()));
        }
        if basis.rank() != basis.cols {
            return Err(ArithError::DimensionMismatch(
                "restrict: basis columns are dependent".into(),
            ));
        }
        let image = self * basis;
        basis.solve(&image)?.ok_or(ArithError::NotInvariant)
    }

    /// Basis of the intersection of two column spaces.
    pub fn intersect_spaces(a: &Self, b: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        if a.cols == 0 || b.cols == 0 {
            return Self::zeros(a.rows, 0);
        }
        let k = a.hstack(&(-b)).kernel_basis();
        let coeffs = k.submatrix(
            &(0..a.cols).collect::<Vec<_>>(),
            &(0..k.cols).collect::<Vec<_>>(),
        );
        (a * &coeffs).image_basis()
    }

    /// True when every column of `sub` lies in the column space of `self`.
    pub fn spans(&self, sub: &Self) -> bool {
        if sub.cols == 0 {
            return true;
        }
        self.hstack(sub).rank() == self.rank()
    }
}

impl Matrix<BigRational> {
    /// Common denominator `d` and the integer matrix `d * self`.
    pub fn clear_denominators(&self) -> (BigInt, Matrix<BigInt>) {
        let d = lcm_all(self.data.iter().map(|x| x.denom()));
        (
            d.clone(),
            self.map(|x| (x * BigRational::from_integer(d.clone())).to_integer()),
        )
    }

    /// Same value as [`Matrix::eval_poly`], computed by integer Horner steps on
    /// the denominator-free matrix with a single division at the end.
    pub fn eval_poly_cleared(&self, p: &UniPoly<BigRational>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let Some(deg) = p.degree() else {
            return Self::zeros(n, n);
        };
        // P(M) = sum c_i N^i / d^i = (sum c_i d^(deg-i) N^i) / d^deg
        let (d, int) = self.clear_denominators();
        let scaled: Vec<BigRational> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(d.pow((deg - i) as u32)))
            .collect();
        let l = lcm_all(scaled.iter().map(|c| c.denom()));
        let coeffs: Vec<BigInt> = scaled
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut acc = Matrix::<BigInt>::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = &acc * &int;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        let den = BigRational::from_integer(l * d.pow(deg as u32));
        acc.map(|x| BigRational::from_integer(x.clone()) / den.clone())
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Ring> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<F: Ring> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Ring> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Ring> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[F]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_list().entries(rows).finish()
    }
}
