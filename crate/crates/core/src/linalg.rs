//! Small dense matrices over a [`Scalar`]. Sizes here never exceed 6x6.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| {
                a[(x, col)]
                    .abs()
                    .partial_cmp(&a[(y, col)].abs())
                    .unwrap_or(core::cmp::Ordering::Equal)
            });
            let Some(p) = pivot else { return S::zero() };
            if a[(p, col)].is_zero() {
                return S::zero();
            }
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                let factor = a[(r, col)].clone() / pv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pv = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() / pv.clone();
                inv[(col, c)] = inv[(col, c)].clone() / pv.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a[(r, c)] = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    inv[(r, c)] = inv[(r, c)].clone() - factor.clone() * inv[(col, c)].clone();
                }
            }
        }
        Some(inv)
    }

    /// Leading principal `k x k` minor.
    pub fn leading_minor(&self, k: usize) -> S {
        Self::from_fn(k, k, |i, j| self[(i, j)].clone()).det()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        <Rational as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = Matrix::from_rows(&[vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]]);
        let inv = c.inverse().unwrap();
        assert_eq!(inv, Matrix::from_rows(&[vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]));
        assert_eq!(c.det(), q(3, 1));
        assert_eq!(c.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.det(), q(0, 1));
    }
}
