//! Row Hermite normal form of integer matrices, and exact integer determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Hermite normal form of the lattice spanned by the rows of `gens`.
///
/// Returns the nonzero rows in echelon form: pivots positive, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hnf(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(cols) = gens.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(first) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, first);
        for i in (r + 1)..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let x = a[r][c].clone();
            let y = a[i][c].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            let new_r: Vec<BigInt> = (0..cols).map(|k| &s * &a[r][k] + &t * &a[i][k]).collect();
            let new_i: Vec<BigInt> = (0..cols).map(|k| &xg * &a[i][k] - &yg * &a[r][k]).collect();
            a[r] = new_r;
            a[i] = new_i;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
        }
        let piv = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                for k in 0..cols {
                    let d = &q * &a[r][k];
                    a[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_small_lattice() {
        let h = hnf(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        let h = hnf(&m(&[&[4, 6], &[6, 9]]));
        assert_eq!(h, m(&[&[2, 3]]));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&m(&[&[3, 1, 0], &[0, 5, 2], &[1, 0, 7]]));
        let b = hnf(&m(&[&[3, 6, 2], &[0, 5, 2], &[4, 1, 7], &[1, 0, 7]]));
        // the second generating set spans the same lattice
        assert_eq!(a, b);
        assert_eq!(
            det_int(&a),
            det_int(&m(&[&[3, 1, 0], &[0, 5, 2], &[1, 0, 7]])).abs()
        );
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_int(&m(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(
            det_int(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])),
            BigInt::from(-2)
        );
        assert_eq!(det_int(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }
}
