//! Dense Gauss-Jordan elimination over an exact field.

use super::scalar::Scalar;
use super::AlgebraError;

/// Row-major dense matrix.
pub type Matrix<S> = Vec<Vec<S>>;

pub fn zeros<S: Scalar>(rows: usize, cols: usize) -> Matrix<S> {
    vec![vec![S::zero(); cols]; rows]
}

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

/// Picks, among the nonzero entries of column `col` at or below `from`, the one
/// with the smallest representation. Ties go to the lowest row.
fn pivot_row<S: Scalar>(a: &Matrix<S>, col: usize, from: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&r| !a[r][col].is_zero())
        .min_by_key(|&r| (a[r][col].weight(), r))
}

/// Solves `A X = B` for square nonsingular `A`.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>, AlgebraError> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut a = a.clone();
    let mut b = b.clone();
    for col in 0..n {
        let p = pivot_row(&a, col, col).ok_or(AlgebraError::Singular)?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].inv().ok_or(AlgebraError::Singular)?;
        for j in col..n {
            a[col][j] = a[col][j].clone() * inv.clone();
        }
        for j in 0..k {
            b[col][j] = b[col][j].clone() * inv.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n {
                let t = f.clone() * a[col][j].clone();
                a[r][j] = a[r][j].clone() - t;
            }
            for j in 0..k {
                let t = f.clone() * b[col][j].clone();
                b[r][j] = b[r][j].clone() - t;
            }
        }
    }
    Ok(b)
}

/// Determinant by elimination.
pub fn det<S: Scalar>(a: &Matrix<S>) -> S {
    let n = a.len();
    let mut a = a.clone();
    let mut acc = S::one();
    for col in 0..n {
        let Some(p) = pivot_row(&a, col, col) else {
            return S::zero();
        };
        if p != col {
            a.swap(col, p);
            acc = -acc;
        }
        let piv = a[col][col].clone();
        acc = acc * piv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / piv.clone();
            for j in col..n {
                let t = f.clone() * a[col][j].clone();
                a[r][j] = a[r][j].clone() - t;
            }
        }
    }
    acc
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let k = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(S::zero(), |s, (x, brow)| s + x.clone() * brow[j].clone())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi, Rational};

    #[test]
    fn solves_and_inverts() {
        let a: Matrix<Rational> = vec![vec![qi(2), qi(1)], vec![qi(1), qi(3)]];
        let x = solve(&a, &identity(2)).unwrap();
        assert_eq!(mat_mul(&a, &x), identity(2));
        assert_eq!(x[0][0], q(3, 5));
        assert_eq!(det(&a), qi(5));
    }

    #[test]
    fn singular_is_reported() {
        let a: Matrix<Rational> = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(solve(&a, &identity(2)), Err(AlgebraError::Singular));
        assert_eq!(det(&a), qi(0));
    }

    #[test]
    fn determinant_sign_under_swap() {
        let a: Matrix<Rational> = vec![
            vec![qi(0), qi(1), qi(0)],
            vec![qi(1), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(7)],
        ];
        assert_eq!(det(&a), qi(-7));
    }
}
