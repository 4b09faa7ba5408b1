//! Linear subspaces of `ℚ(i)^m` with exact sum, intersection and preimage.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A subspace of `ambient`-dimensional space.
///
/// Stored canonically as the nonzero rows of a reduced row echelon form whose
/// rows span the subspace, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::identity(ambient) }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::row_span(&m.transpose())
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Self {
        let e = m.echelon();
        let r = e.pivots.len();
        let rows = Matrix::from_fn(r, m.cols(), |i, j| e.reduced[(i, j)].clone());
        Subspace { ambient: m.cols(), rows }
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        let mut axes: Vec<usize> = axes.into_iter().collect();
        axes.sort_unstable();
        axes.dedup();
        let rows = Matrix::from_fn(axes.len(), ambient, |i, j| {
            if axes[i] == j {
                Scalar::ONE
            } else {
                Scalar::ZERO
            }
        });
        Subspace { ambient, rows }
    }

    /// Image of a linear map `m`.
    pub fn image(m: &Matrix) -> Self {
        Self::column_span(m)
    }

    /// Kernel of a linear map `m`.
    pub fn kernel(m: &Matrix) -> Self {
        Self::column_span(&m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> Matrix {
        self.rows.transpose()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.rows.row(i).to_vec()).collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient, other.ambient
            )))
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        Ok(Self::row_span(&self.rows.vstack(&other.rows)))
    }

    /// Annihilator `{y : y·x = 0 for all x}` under the bilinear dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        Self::column_span(&self.rows.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient {
            return Ok(self.clone());
        }
        // x = U a = W b  <=>  [U | -W] (a, b) = 0.
        let u = self.basis();
        let w = other.basis();
        let k = u.hstack(&w.neg()).kernel();
        let a = Matrix::from_fn(self.dim(), k.cols(), |i, j| k[(i, j)].clone());
        Ok(Self::column_span(&u.mul(&a)))
    }

    /// `{x : m·x ∈ self}` for a map `m` into the ambient space of `self`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map has {} rows, subspace ambient is {}",
                m.rows(),
                self.ambient
            )));
        }
        if self.dim() == self.ambient {
            return Ok(Subspace::full(m.cols()));
        }
        let ann = self.annihilator().rows;
        Ok(Subspace::kernel(&ann.mul(m)))
    }

    /// Image of `self` under `m`.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns, subspace ambient is {}",
                m.cols(),
                self.ambient
            )));
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(m.rows()));
        }
        Ok(Self::column_span(&m.mul(&self.basis())))
    }

    /// `dim(self / (self ∩ other))`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.sum(other)?.dim() - other.dim())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let row = Matrix::from_rows(alloc::vec![v.to_vec()], self.ambient).expect("vector length");
        Self::row_span(&self.rows.vstack(&row)).dim() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    /// Columns `j` of `vectors` (in order) that are independent modulo `self`;
    /// returns their indices. Used to pick representatives of a quotient.
    pub fn complement_indices(&self, vectors: &Matrix) -> Vec<usize> {
        let mut acc = self.clone();
        let mut picked = Vec::new();
        for j in 0..vectors.cols() {
            let col = vectors.column(j);
            if !acc.contains_vector(&col) {
                let row = Matrix::from_rows(alloc::vec![col], self.ambient).expect("vector length");
                acc = Self::row_span(&acc.rows.vstack(&row));
                picked.push(j);
            }
        }
        picked
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(ambient: usize, vecs: &[&[i64]]) -> Subspace {
        let cols: Vec<Vec<Scalar>> =
            vecs.iter().map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Subspace::column_span(&Matrix::from_columns(ambient, &cols))
    }

    #[test]
    fn equal_subspaces() {
        let u = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.quotient_dim(&u).unwrap(), 0);
    }

    #[test]
    fn complementary_lines() {
        let a = span(2, &[&[1, 0]]);
        let b = span(2, &[&[1, 1]]);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn plane_intersection() {
        let u = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let w = span(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let x = u.intersection(&w).unwrap();
        assert_eq!(x.dim(), 1);
        assert!(x.contains_vector(&[Scalar::ONE, Scalar::ONE, Scalar::ZERO]));
    }

    #[test]
    fn mismatched_ambient() {
        assert!(Subspace::zero(2).sum(&Subspace::zero(3)).is_err());
        assert!(Subspace::zero(2).intersection(&Subspace::full(3)).is_err());
    }

    #[test]
    fn preimage_of_line() {
        // m = diag(1, 0): preimage of the x-axis is everything, of the y-axis is the y-axis.
        let m = Matrix::from_ints(2, 2, &[1, 0, 0, 0]);
        assert_eq!(span(2, &[&[1, 0]]).preimage(&m).unwrap().dim(), 2);
        assert_eq!(span(2, &[&[0, 1]]).preimage(&m).unwrap().dim(), 1);
    }
}
