//! Dense matrices over the Gaussian rationals and exact row reduction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense `rows × cols` matrix. Entry `(i, j)` is the coefficient of target
/// basis vector `i` in the image of source basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// The reduced matrix; rows past `pivots.len()` are zero.
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Integer entries, row-major. Convenience for tests and fixtures.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix { rows, cols, data: entries.iter().map(|&x| Scalar::from_int(x)).collect() }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    /// Matrix product `self · rhs`. Panics on shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Stacks `self` above `below`.
    pub fn vstack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Matrix { rows: self.rows + below.rows, cols: self.cols, data }
    }

    /// Places `self` left of `right`.
    pub fn hstack(&self, right: &Matrix) -> Matrix {
        assert_eq!(self.rows, right.rows, "hstack height mismatch");
        Matrix::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                right[(i, j - self.cols)].clone()
            }
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Reduced row echelon form. The pivot in each column is the first row
    /// (top-down) with a nonzero entry, so results are deterministic.
    pub fn echelon(&self) -> Echelon {
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
            let inv = m[(r, c)].inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = &m[(r, j)] * &inv;
                    m[(r, j)] = v;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
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
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Reducing the shorter side is cheaper and rank is transpose-invariant.
        if self.rows > self.cols {
            self.transpose().echelon().pivots.len()
        } else {
            self.echelon().pivots.len()
        }
    }

    /// Basis of the null space, one vector per free column, as columns of the result.
    pub fn kernel(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k[(f, idx)] = Scalar::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                let v = &reduced[(row, f)];
                if !v.is_zero() {
                    k[(pc, idx)] = -v;
                }
            }
        }
        k
    }

    /// Exact inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| reduced[(i, n + j)].clone()))
    }

    /// One solution `x` of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]);
        let Echelon { reduced, pivots } = self.hstack(&rhs).echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn is_square_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn ensure_shape(&self, rows: usize, cols: usize, what: &str) -> Result<()> {
        if self.shape() == (rows, cols) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what}: expected {rows}x{cols}, found {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { ", [" })?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
