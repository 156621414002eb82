//! Small dense linear algebra: jet-friendly determinants, a Hermitian
//! Cholesky factorization used as a positive-definiteness test and a pivoted
//! LU solver for metrics.

use crate::error::{Error, Result};
use crate::scalar::{mul, sub, Scalar, C64};
use nalgebra::DMatrix;

/// Relative pivot threshold of [`cholesky`].
pub const PIVOT_TOL: f64 = 1e-12;

/// Determinant by Gaussian elimination, pivoting on the largest value modulus.
/// Works for any [`Scalar`], so derivatives of `det` come from the jets.
pub fn det<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut acc = S::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .value()
                    .norm()
                    .total_cmp(&a[j][col].value().norm())
            })
            .expect("non-empty range");
        if a[pivot][col].value().norm() == 0.0 {
            return S::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            acc = -acc;
        }
        let inv = a[col][col].recip();
        acc = mul(&acc, &a[col][col]);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = mul(&a[row][col], &inv);
            for k in col + 1..n {
                let t = mul(&factor, &a[col][k]);
                a[row][k] = sub(&a[row][k], &t);
            }
        }
    }
    acc
}

/// Lower-triangular `L` with `A = L L*`, or `None` when a pivot falls below
/// `PIVOT_TOL` times the largest diagonal entry.
pub fn cholesky(a: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    let n = a.nrows();
    let scale = (0..n)
        .map(|i| a[(i, i)].re.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut l = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > PIVOT_TOL * scale) {
            return None;
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Some(l)
}

pub fn is_positive_definite(a: &DMatrix<C64>) -> bool {
    cholesky(a).is_some()
}

/// Solves `A X = B` column by column with partial pivoting. Fails with
/// [`Error::SingularMetric`] when a pivot falls below `PIVOT_TOL` times the
/// largest entry modulus. Positive definiteness is not required.
fn lu_solve(a: &DMatrix<C64>, b: DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = a.nrows();
    let scale = a
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let (mut a, mut b) = (a.clone(), b);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .expect("non-empty range");
        if !(a[(pivot, col)].norm() > PIVOT_TOL * scale) {
            return Err(Error::SingularMetric);
        }
        a.swap_rows(pivot, col);
        b.swap_rows(pivot, col);
        let inv = a[(col, col)].inv();
        for row in col + 1..n {
            let factor = a[(row, col)] * inv;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for k in col + 1..n {
                let t = factor * a[(col, k)];
                a[(row, k)] -= t;
            }
            for k in 0..b.ncols() {
                let t = factor * b[(col, k)];
                b[(row, k)] -= t;
            }
        }
    }
    for k in 0..b.ncols() {
        for i in (0..n).rev() {
            let mut s = b[(i, k)];
            for j in i + 1..n {
                s -= a[(i, j)] * b[(j, k)];
            }
            b[(i, k)] = s / a[(i, i)];
        }
    }
    Ok(b)
}

/// Solves `A x = b` for invertible Hermitian `A`.
pub fn solve_hermitian(a: &DMatrix<C64>, b: &[C64]) -> Result<Vec<C64>> {
    Ok(lu_solve(a, DMatrix::from_column_slice(b.len(), 1, b))?
        .iter()
        .copied()
        .collect())
}

/// Inverse of an invertible Hermitian matrix.
pub fn inverse_hermitian(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    lu_solve(a, DMatrix::identity(a.nrows(), a.nrows()))
}
