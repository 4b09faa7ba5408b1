//! Bounded double complexes `(A^{•,•}, ∂, ∂̄)` supported in `[0,n]²`.
//!
//! Conventions, fixed crate-wide:
//! * `∂` has bidegree `(1,0)`, `∂̄` has bidegree `(0,1)`;
//! * `∂² = 0`, `∂̄² = 0` and `∂∂̄ + ∂̄∂ = 0`, so `d = ∂ + ∂̄` squares to zero;
//! * matrix entry `(i, j)` of a map is the coefficient of target basis vector
//!   `i` in the image of source basis vector `j`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graded::{GradedComplex, Summand};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub const fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub const fn total(self) -> usize {
        self.p + self.q
    }

    /// `(q, p)`.
    pub const fn swapped(self) -> Self {
        Bidegree { p: self.q, q: self.p }
    }

    /// `(n-p, n-q)`.
    pub const fn reflected(self, n: usize) -> Self {
        Bidegree { p: n - self.p, q: n - self.q }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Which double-complex identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    DelSquared,
    DelbarSquared,
    Anticommute,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::DelSquared => "∂∂ ≠ 0",
            Identity::DelbarSquared => "∂̄∂̄ ≠ 0",
            Identity::Anticommute => "∂∂̄ + ∂̄∂ ≠ 0",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AxiomFailure {
    /// Source bidegree of the offending composite.
    pub at: Bidegree,
    pub identity: Identity,
}

/// Outcome of [`DoubleComplex::validate`]: empty means the axioms hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub failures: Vec<AxiomFailure>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            return String::from("valid");
        }
        let parts: Vec<String> =
            self.failures.iter().map(|f| format!("{} at {}", f.identity, f.at)).collect();
        parts.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    n: usize,
    dims: Vec<usize>,
    del: Vec<Matrix>,
    delbar: Vec<Matrix>,
}

impl DoubleComplex {
    /// A complex with the given component dimensions and zero differentials.
    pub fn with_dims(n: usize, mut dim: impl FnMut(usize, usize) -> usize) -> Self {
        let side = n + 1;
        let mut dims = vec![0; side * side];
        for p in 0..side {
            for q in 0..side {
                dims[p * side + q] = dim(p, q);
            }
        }
        let mut c = DoubleComplex { n, dims, del: Vec::new(), delbar: Vec::new() };
        for p in 0..side {
            for q in 0..side {
                let src = c.dim(p as i64, q as i64);
                c.del.push(Matrix::zeros(c.dim(p as i64 + 1, q as i64), src));
                c.delbar.push(Matrix::zeros(c.dim(p as i64, q as i64 + 1), src));
            }
        }
        c
    }

    pub fn zero(n: usize) -> Self {
        Self::with_dims(n, |_, _| 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, p: usize, q: usize) -> usize {
        p * (self.n + 1) + q
    }

    fn in_range(&self, p: i64, q: i64) -> bool {
        p >= 0 && q >= 0 && p <= self.n as i64 && q <= self.n as i64
    }

    /// `dim A^{p,q}`; zero outside `[0,n]²`.
    pub fn dim(&self, p: i64, q: i64) -> usize {
        if self.in_range(p, q) {
            self.dims[self.idx(p as usize, q as usize)]
        } else {
            0
        }
    }

    pub fn dim_at(&self, b: Bidegree) -> usize {
        self.dim(b.p as i64, b.q as i64)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Dimension grid indexed `[p][q]`.
    pub fn dims_grid(&self) -> Vec<Vec<usize>> {
        (0..=self.n).map(|p| (0..=self.n).map(|q| self.dim(p as i64, q as i64)).collect()).collect()
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> {
        let side = self.n + 1;
        (0..side).flat_map(move |p| (0..side).map(move |q| Bidegree::new(p, q)))
    }

    /// `∂ : A^{p,q} → A^{p+1,q}`.
    pub fn del(&self, p: usize, q: usize) -> &Matrix {
        &self.del[self.idx(p, q)]
    }

    /// `∂̄ : A^{p,q} → A^{p,q+1}`.
    pub fn delbar(&self, p: usize, q: usize) -> &Matrix {
        &self.delbar[self.idx(p, q)]
    }

    /// `∂ : A^{p,q} → A^{p+1,q}` for arbitrary integer bidegrees (zero off the support).
    pub fn del_any(&self, p: i64, q: i64) -> Matrix {
        if self.in_range(p, q) {
            self.del(p as usize, q as usize).clone()
        } else {
            Matrix::zeros(self.dim(p + 1, q), self.dim(p, q))
        }
    }

    pub fn delbar_any(&self, p: i64, q: i64) -> Matrix {
        if self.in_range(p, q) {
            self.delbar(p as usize, q as usize).clone()
        } else {
            Matrix::zeros(self.dim(p, q + 1), self.dim(p, q))
        }
    }

    /// `∂∂̄ : A^{p,q} → A^{p+1,q+1}` (apply `∂̄` first).
    pub fn del_delbar(&self, p: i64, q: i64) -> Matrix {
        self.del_any(p, q + 1).mul(&self.delbar_any(p, q))
    }

    fn check_bidegree(&self, p: usize, q: usize) -> Result<()> {
        if p <= self.n && q <= self.n {
            Ok(())
        } else {
            Err(Error::OutOfBounds(p as i64, q as i64, self.n))
        }
    }

    pub fn set_del(&mut self, p: usize, q: usize, m: Matrix) -> Result<()> {
        self.check_bidegree(p, q)?;
        m.ensure_shape(self.dim(p as i64 + 1, q as i64), self.dim(p as i64, q as i64), "∂ block")?;
        let i = self.idx(p, q);
        self.del[i] = m;
        Ok(())
    }

    pub fn set_delbar(&mut self, p: usize, q: usize, m: Matrix) -> Result<()> {
        self.check_bidegree(p, q)?;
        m.ensure_shape(self.dim(p as i64, q as i64 + 1), self.dim(p as i64, q as i64), "∂̄ block")?;
        let i = self.idx(p, q);
        self.delbar[i] = m;
        Ok(())
    }

    /// Checks `∂² = 0`, `∂̄² = 0`, `∂∂̄ + ∂̄∂ = 0` at every source bidegree.
    pub fn validate(&self) -> Diagnostics {
        let mut failures = Vec::new();
        for b in self.bidegrees() {
            let (p, q) = (b.p as i64, b.q as i64);
            if self.dim(p, q) == 0 {
                continue;
            }
            if !self.del_any(p + 1, q).mul(self.del(b.p, b.q)).is_zero() {
                failures.push(AxiomFailure { at: b, identity: Identity::DelSquared });
            }
            if !self.delbar_any(p, q + 1).mul(self.delbar(b.p, b.q)).is_zero() {
                failures.push(AxiomFailure { at: b, identity: Identity::DelbarSquared });
            }
            let a = self.del_any(p, q + 1).mul(self.delbar(b.p, b.q));
            let c = self.delbar_any(p + 1, q).mul(self.del(b.p, b.q));
            if !a.add(&c).is_zero() {
                failures.push(AxiomFailure { at: b, identity: Identity::Anticommute });
            }
        }
        Diagnostics { failures }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let d = self.validate();
        if d.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidComplex(d.summary()))
        }
    }

    /// Componentwise block-diagonal sum.
    pub fn direct_sum(&self, other: &DoubleComplex) -> Result<DoubleComplex> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let mut out = DoubleComplex::with_dims(self.n, |p, q| {
            self.dim(p as i64, q as i64) + other.dim(p as i64, q as i64)
        });
        for b in self.bidegrees() {
            let i = out.idx(b.p, b.q);
            out.del[i] = block_diag(self.del(b.p, b.q), other.del(b.p, b.q));
            out.delbar[i] = block_diag(self.delbar(b.p, b.q), other.delbar(b.p, b.q));
        }
        Ok(out)
    }

    /// The dual complex: `(DA)^{r,s} = (A^{n-r,n-s})^∨` with
    /// `∂_D^{(r,s)} = (-1)^{r+s} (∂_A^{(n-r-1,n-s)})^T`, and likewise for `∂̄`.
    pub fn dual(&self) -> Result<DoubleComplex> {
        self.require_valid()?;
        let n = self.n as i64;
        let mut out = DoubleComplex::with_dims(self.n, |r, s| self.dim(n - r as i64, n - s as i64));
        for b in self.bidegrees() {
            let (r, s) = (b.p as i64, b.q as i64);
            let sign = if (r + s) % 2 == 0 { Scalar::ONE } else { Scalar::from_int(-1) };
            let d = self.del_any(n - r - 1, n - s).transpose().scaled(&sign);
            let db = self.delbar_any(n - r, n - s - 1).transpose().scaled(&sign);
            out.set_del(b.p, b.q, d)?;
            out.set_delbar(b.p, b.q, db)?;
        }
        Ok(out)
    }

    /// Swaps bidegrees across the diagonal and exchanges `∂` with `∂̄`.
    /// Entries are not conjugated.
    pub fn conjugate(&self) -> Result<DoubleComplex> {
        self.require_valid()?;
        Ok(self.swapped_unchecked())
    }

    pub(crate) fn swapped_unchecked(&self) -> DoubleComplex {
        let mut out = DoubleComplex::with_dims(self.n, |p, q| self.dim(q as i64, p as i64));
        for b in self.bidegrees() {
            let i = out.idx(b.p, b.q);
            out.del[i] = self.delbar(b.q, b.p).clone();
            out.delbar[i] = self.del(b.q, b.p).clone();
        }
        out
    }

    /// `C^k = ⊕_{p+q=k} A^{p,q}` (blocks ordered by increasing `p`), `d = ∂ + ∂̄`.
    pub fn total_complex(&self) -> Result<GradedComplex> {
        self.require_valid()?;
        Ok(self.total_unchecked())
    }

    pub(crate) fn total_unchecked(&self) -> GradedComplex {
        let top = 2 * self.n;
        let spaces: Vec<Vec<Summand>> = (0..=top).map(|k| self.total_summands(k)).collect();
        let diff = (0..=top).map(|k| self.total_differential(k)).collect();
        GradedComplex::new(0, spaces, diff)
    }

    /// Nonzero blocks of total degree `k`, ordered by increasing `p`.
    pub fn total_summands(&self, k: usize) -> Vec<Summand> {
        (0..=k.min(self.n))
            .filter(|&p| k - p <= self.n)
            .map(|p| Summand { tag: Bidegree::new(p, k - p), dim: self.dim(p as i64, (k - p) as i64) })
            .filter(|s| s.dim > 0)
            .collect()
    }

    /// `d : C^k → C^{k+1}` in the block order of [`Self::total_summands`].
    pub fn total_differential(&self, k: usize) -> Matrix {
        let src = self.total_summands(k);
        let dst = self.total_summands(k + 1);
        let rows = dst.iter().map(|s| s.dim).sum();
        let cols = src.iter().map(|s| s.dim).sum();
        let mut d = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for s in &src {
            let mut r0 = 0;
            for t in &dst {
                if t.tag.p == s.tag.p + 1 && t.tag.q == s.tag.q {
                    d.set_block(r0, c0, self.del(s.tag.p, s.tag.q));
                } else if t.tag.p == s.tag.p && t.tag.q == s.tag.q + 1 {
                    d.set_block(r0, c0, self.delbar(s.tag.p, s.tag.q));
                }
                r0 += t.dim;
            }
            c0 += s.dim;
        }
        d
    }

    /// Applies an invertible change of basis `x ↦ P_{p,q} x` in every bidegree:
    /// `∂' = P_{p+1,q} ∂ P_{p,q}^{-1}`, `∂̄' = P_{p,q+1} ∂̄ P_{p,q}^{-1}`.
    /// `bases` is indexed like [`Self::bidegrees`].
    pub fn change_basis(&self, bases: &[Matrix]) -> Result<DoubleComplex> {
        let side = self.n + 1;
        if bases.len() != side * side {
            return Err(Error::DimensionMismatch(format!(
                "expected {} basis changes, got {}",
                side * side,
                bases.len()
            )));
        }
        let mut inverses = Vec::with_capacity(bases.len());
        for (b, m) in self.bidegrees().zip(bases) {
            let d = self.dim_at(b);
            m.ensure_shape(d, d, "basis change")?;
            inverses.push(m.inverse().ok_or_else(|| {
                Error::DimensionMismatch(format!("basis change at {b} is singular"))
            })?);
        }
        let mut out = self.clone();
        for b in self.bidegrees() {
            let i = self.idx(b.p, b.q);
            if b.p < self.n {
                let t = &bases[self.idx(b.p + 1, b.q)];
                out.del[i] = t.mul(&self.del[i]).mul(&inverses[i]);
            }
            if b.q < self.n {
                let t = &bases[self.idx(b.p, b.q + 1)];
                out.delbar[i] = t.mul(&self.delbar[i]).mul(&inverses[i]);
            }
        }
        Ok(out)
    }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    m
}
