//! Multiplicities of zigzags and squares, recovered by calibrating square-blind
//! invariants on every pure shape and solving the resulting linear system.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::invariants::{InvariantReport, Page};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::schweitzer::s_dims;
use crate::shapes::{enumerate_shapes, make_zigzag, MultiplicityTable, ZigzagShape};

fn push_grid(out: &mut Vec<i64>, g: &[Vec<usize>]) {
    out.extend(g.iter().flatten().map(|&x| x as i64));
}

fn push_pages(out: &mut Vec<i64>, pages: &[Page]) {
    // E_0 and d_0 see squares; everything from E_1 on does not.
    for pg in pages.iter().skip(1) {
        push_grid(out, &pg.dims);
        push_grid(out, &pg.rank_out);
    }
}

/// Square-blind invariants: gr-gr de Rham dims, both Frölicher sequences
/// (pages `r ≥ 1` and their differentials), Bott-Chern and Aeppli grids.
pub fn invariant_vector(a: &DoubleComplex) -> Result<Vec<i64>> {
    Ok(vector_from_report(&InvariantReport::new(a)?))
}

pub fn vector_from_report(r: &InvariantReport) -> Vec<i64> {
    let mut out = Vec::new();
    for g in &r.grgr {
        push_grid(&mut out, g);
    }
    push_pages(&mut out, &r.fss_col.pages);
    push_pages(&mut out, &r.fss_row.pages);
    push_grid(&mut out, &r.h_bc);
    push_grid(&mut out, &r.h_a);
    out
}

/// `s^k_{p,q}` for `(p,q) ∈ [0,n+1]²`, `k ∈ [-1,2n]`, flattened.
pub fn schweitzer_vector(a: &DoubleComplex) -> Result<Vec<i64>> {
    let n = a.n() as i64;
    let mut out = Vec::new();
    for p in 0..=n + 1 {
        for q in 0..=n + 1 {
            let s = s_dims(a, p, q)?;
            out.extend((-1..=2 * n as i32).map(|k| s.get(&k).copied().unwrap_or(0) as i64));
        }
    }
    Ok(out)
}

/// Invariants of every pure zigzag in `[0,n]²`, one column per shape.
#[derive(Clone, Debug)]
pub struct Calibration {
    pub n: usize,
    pub shapes: Vec<ZigzagShape>,
    pub matrix: Matrix,
    /// True if the Schweitzer dimensions had to be appended to separate shapes.
    pub extended: bool,
    /// Rows of `matrix` forming an invertible square block.
    rows: Vec<usize>,
    block_inverse: Matrix,
}

fn columns(shapes: &[ZigzagShape], n: usize, extended: bool) -> Result<Matrix> {
    let mut cols = Vec::with_capacity(shapes.len());
    for z in shapes {
        let a = make_zigzag(z, n)?;
        let mut v = invariant_vector(&a)?;
        if extended {
            v.extend(schweitzer_vector(&a)?);
        }
        cols.push(v.into_iter().map(Scalar::from_int).collect::<Vec<_>>());
    }
    let rows = cols.first().map_or(0, Vec::len);
    Ok(Matrix::from_columns(rows, &cols))
}

impl Calibration {
    /// Builds the matrix and checks it has full column rank.
    pub fn new(n: usize) -> Result<Self> {
        let shapes = enumerate_shapes(n);
        let mut extended = false;
        let mut matrix = columns(&shapes, n, false)?;
        if matrix.rank() < shapes.len() {
            extended = true;
            matrix = columns(&shapes, n, true)?;
        }
        // Pivot columns of the transpose are independent rows of `matrix`.
        let rows = matrix.transpose().echelon().pivots;
        if rows.len() < shapes.len() {
            return Err(Error::CalibrationRankDeficient { n, rank: rows.len(), shapes: shapes.len() });
        }
        let all: Vec<usize> = (0..shapes.len()).collect();
        let block_inverse = matrix.submatrix(&rows, &all).inverse().expect("independent rows");
        Ok(Calibration { n, shapes, matrix, extended, rows, block_inverse })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The observable vector the matrix is calibrated against.
    pub fn observe(&self, a: &DoubleComplex) -> Result<Vec<i64>> {
        let mut v = invariant_vector(a)?;
        if self.extended {
            v.extend(schweitzer_vector(a)?);
        }
        Ok(v)
    }

    /// Unique exact solution of `matrix · m = v`, required integral and nonnegative.
    pub fn solve(&self, v: &[i64]) -> Result<Vec<usize>> {
        if v.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "invariant vector has length {}, calibration expects {}",
                v.len(),
                self.matrix.rows()
            )));
        }
        let rhs: Vec<Scalar> = self.rows.iter().map(|&i| Scalar::from_int(v[i])).collect();
        let m = self.block_inverse.mul_vec(&rhs);
        let full: Vec<Scalar> = v.iter().map(|&x| Scalar::from_int(x)).collect();
        if self.matrix.mul_vec(&m) != full {
            return Err(Error::Decomposition(String::from("invariants are not a combination of zigzags")));
        }
        m.iter()
            .zip(&self.shapes)
            .map(|(x, z)| match x.to_i64() {
                Some(c) if c >= 0 => Ok(c as usize),
                _ => Err(Error::Decomposition(format!("multiplicity {x} for {z}"))),
            })
            .collect()
    }

    /// Full decomposition of `a`: zigzags from the invariants, squares from the dimension residual.
    pub fn multiplicities(&self, a: &DoubleComplex) -> Result<MultiplicityTable> {
        if a.n() != self.n {
            return Err(Error::AmbientMismatch(a.n(), self.n));
        }
        let counts = self.solve(&self.observe(a)?)?;
        let mut table = MultiplicityTable::default();
        for (z, &c) in self.shapes.iter().zip(&counts) {
            if c > 0 {
                table.zigzags.insert(z.clone(), c);
            }
        }
        let n = self.n;
        let mut residual = a.dims_grid().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<Vec<i64>>>();
        for (z, &c) in &table.zigzags {
            for d in z.dots() {
                residual[d.p][d.q] -= c as i64;
            }
        }
        let mut sq = alloc::vec![alloc::vec![0i64; n.max(1)]; n.max(1)];
        for c in 0..n {
            for d in 0..n {
                let left = if c > 0 { sq[c - 1][d] } else { 0 };
                let below = if d > 0 { sq[c][d - 1] } else { 0 };
                let diag = if c > 0 && d > 0 { sq[c - 1][d - 1] } else { 0 };
                let m = residual[c][d] - left - below - diag;
                if m < 0 {
                    return Err(Error::Decomposition(format!("negative square count at ({c},{d})")));
                }
                sq[c][d] = m;
                if m > 0 {
                    table.squares.insert(Bidegree::new(c, d), m as usize);
                }
            }
        }
        let bad = table.accounting_failures(a);
        if let Some(b) = bad.first() {
            return Err(Error::Decomposition(format!("dimension at {b} is not accounted for")));
        }
        Ok(table)
    }

    /// Invariant vector predicted by a table (squares contribute nothing).
    pub fn aggregate(&self, table: &MultiplicityTable) -> Vec<i64> {
        let m: Vec<Scalar> = self
            .shapes
            .iter()
            .map(|z| Scalar::from_int(table.zigzags.get(z).copied().unwrap_or(0) as i64))
            .collect();
        self.matrix.mul_vec(&m).iter().map(|x| x.to_i64().expect("integral")).collect()
    }
}

/// Convenience wrapper building a fresh calibration.
pub fn multiplicities(a: &DoubleComplex) -> Result<MultiplicityTable> {
    Calibration::new(a.n())?.multiplicities(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{all_indecomposables, scrambled_sum};
    use crate::shapes::{make_square, Indecomposable};

    #[test]
    fn calibration_full_rank_small_n() {
        for n in 0..=2 {
            let c = Calibration::new(n).unwrap();
            assert_eq!(c.rank(), c.shapes.len());
        }
    }

    #[test]
    fn one_square() {
        let t = multiplicities(&make_square(0, 0, 1).unwrap()).unwrap();
        assert!(t.zigzags.is_empty());
        assert_eq!(t.squares.get(&Bidegree::new(0, 0)), Some(&1));
    }

    #[test]
    fn roundtrip_everything_n2() {
        let cal = Calibration::new(2).unwrap();
        let items: Vec<Indecomposable> = all_indecomposables(2);
        let (a, truth) = scrambled_sum(2, &items, 5).unwrap();
        assert_eq!(cal.multiplicities(&a).unwrap(), truth);
    }
}
