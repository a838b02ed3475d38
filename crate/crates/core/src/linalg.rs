//! Small dense matrices over `Q(i)` with exact Gaussian elimination.

use std::ops::{Index, IndexMut, Mul};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::ExactScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
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

    /// Direct sum `self (+) other`: block diagonal.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn determinant(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return ExactScalar::zero();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = &det * &p;
            let inv = p.invert().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let t = &f * &a[(col, c)];
                    a[(r, c)] -= &t;
                }
            }
        }
        det
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::InvalidInput("dimension mismatch in linear solve".into()));
        }
        self.solve_consistent(b)?.ok_or(Error::SingularMatrix)
    }

    /// Solves `self * x = b` for a matrix with linearly independent columns.
    ///
    /// Returns `Ok(None)` when the system is inconsistent and
    /// `Err(SingularMatrix)` when the columns are dependent.
    pub fn solve_consistent(&self, b: &[ExactScalar]) -> Result<Option<Vec<ExactScalar>>> {
        let (n, k) = (self.rows, self.cols);
        let mut a = Matrix::zeros(n, k + 1);
        for r in 0..n {
            for c in 0..k {
                a[(r, c)] = self[(r, c)].clone();
            }
            a[(r, k)] = b[r].clone();
        }
        for col in 0..k {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(piv, col);
            let inv = a[(col, col)].invert()?;
            for c in col..=k {
                a[(col, c)] = &a[(col, c)] * &inv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in col..=k {
                    let t = &f * &a[(col, c)];
                    a[(r, c)] -= &t;
                }
            }
        }
        if (k..n).any(|r| !a[(r, k)].is_zero()) {
            return Ok(None);
        }
        Ok(Some((0..k).map(|r| a[(r, k)].clone()).collect()))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let mut e = vec![ExactScalar::zero(); n];
            e[c] = ExactScalar::one();
            cols.push(self.solve(&e)?);
        }
        let mut m = Matrix::zeros(n, n);
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        Ok(m)
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

impl Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (r, c): (usize, usize)) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let t = a * &rhs[(k, c)];
                    m[(r, c)] += &t;
                }
            }
        }
        m
    }
}

/// Serialised as a list of rows.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}
