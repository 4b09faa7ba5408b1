//! The Schweitzer complex `L_{p,q}(A)` of a double complex.
//!
//! For integers `p, q`:
//!
//! ```text
//! L^k = ⊕_{r+s=k,   r<p,  s<q } A^{r,s}     for k ≤ p+q-2
//! L^k = ⊕_{r+s=k+1, r≥p,  s≥q } A^{r,s}     for k ≥ p+q-1
//! ```
//!
//! with differential `pr∘(∂+∂̄)` in the lower range, `∂∂̄` out of
//! `A^{p-1,q-1}` at the corner `k = p+q-2`, and `∂+∂̄` in the upper range.
//! Degrees run over `[-1, 2n]`; every other degree is zero.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::exterior::wedge_sign;
use crate::graded::{alternating_sum, GradedComplex, Summand};
use crate::lie::LieComplex;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Bidegrees `(r,s)` of `A` contributing to `L^k_{p,q}`, ordered by increasing `r`.
pub fn region(n: usize, p: i64, q: i64, k: i64) -> Vec<Bidegree> {
    let lower = k <= p + q - 2;
    let total = if lower { k } else { k + 1 };
    (0..=n as i64)
        .filter_map(|r| {
            let s = total - r;
            if s < 0 || s > n as i64 {
                return None;
            }
            let keep = if lower { r < p && s < q } else { r >= p && s >= q };
            keep.then(|| Bidegree::new(r as usize, s as usize))
        })
        .collect()
}

fn lower_range(p: i64, q: i64, k: i64) -> bool {
    k <= p + q - 2
}

/// Block of `d_L^k` from `A^{src}` to `A^{dst}` (both already known to be in the regions).
fn block(a: &DoubleComplex, p: i64, q: i64, k: i64, src: Bidegree, dst: Bidegree) -> Option<Matrix> {
    let (r, s) = (src.p as i64, src.q as i64);
    if k == p + q - 2 {
        // Corner: only A^{p-1,q-1} → A^{p,q} via ∂∂̄.
        return (r == p - 1 && s == q - 1 && dst.p as i64 == p && dst.q as i64 == q)
            .then(|| a.del_delbar(r, s));
    }
    if dst.p == src.p + 1 && dst.q == src.q {
        Some(a.del(src.p, src.q).clone())
    } else if dst.p == src.p && dst.q == src.q + 1 {
        Some(a.delbar(src.p, src.q).clone())
    } else {
        None
    }
}

fn summands(a: &DoubleComplex, p: i64, q: i64, k: i64) -> Vec<Summand> {
    region(a.n(), p, q, k)
        .into_iter()
        .map(|b| Summand { tag: b, dim: a.dim_at(b) })
        .filter(|s| s.dim > 0)
        .collect()
}

pub(crate) fn build_unchecked(a: &DoubleComplex, p: i64, q: i64) -> GradedComplex {
    let top = 2 * a.n() as i64;
    let spaces: Vec<Vec<Summand>> = (-1..=top).map(|k| summands(a, p, q, k)).collect();
    let mut diff = Vec::with_capacity(spaces.len());
    for (i, k) in (-1..=top).enumerate() {
        let src = &spaces[i];
        let empty = Vec::new();
        let dst = spaces.get(i + 1).unwrap_or(&empty);
        let rows = dst.iter().map(|s| s.dim).sum();
        let cols = src.iter().map(|s| s.dim).sum();
        let mut d = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for s in src {
            let mut r0 = 0;
            for t in dst {
                if let Some(m) = block(a, p, q, k, s.tag, t.tag) {
                    d.set_block(r0, c0, &m);
                }
                r0 += t.dim;
            }
            c0 += s.dim;
        }
        diff.push(d);
    }
    GradedComplex::new(-1, spaces, diff)
}

/// `L_{p,q}(A)`; fails if `A` is not a double complex or `d_L² ≠ 0`.
pub fn build_l(a: &DoubleComplex, p: i64, q: i64) -> Result<GradedComplex> {
    a.require_valid()?;
    let l = build_unchecked(a, p, q);
    let bad = l.square_zero_failures();
    if let Some(k) = bad.first() {
        return Err(Error::InvalidComplex(alloc::format!("d_L^2 != 0 in degree {k} of L_({p},{q})")));
    }
    Ok(l)
}

/// `s^k_{p,q}(A) = dim H^k(L_{p,q}(A))` for `k ∈ [-1, 2n]`.
pub fn s_dims(a: &DoubleComplex, p: i64, q: i64) -> Result<BTreeMap<i32, usize>> {
    Ok(build_l(a, p, q)?.cohomology())
}

fn s_at(a: &DoubleComplex, p: i64, q: i64, k: i64) -> Result<usize> {
    Ok(s_dims(a, p, q)?.get(&(k as i32)).copied().unwrap_or(0))
}

/// `H^{p+q-1}(L_{p,q}) = H_BC^{p,q}`.
pub fn bott_chern_via_l(a: &DoubleComplex, p: i64, q: i64) -> Result<usize> {
    s_at(a, p, q, p + q - 1)
}

/// `H^{p+q-2}(L_{p,q}) = H_A^{p-1,q-1}`.
pub fn aeppli_via_l(a: &DoubleComplex, p: i64, q: i64) -> Result<usize> {
    s_at(a, p, q, p + q - 2)
}

/// `χ_{p,q} = Σ_k (-1)^k s^k_{p,q}`, checked against the alternating sum of `dim L^k`.
pub fn euler_chi_pq(a: &DoubleComplex, p: i64, q: i64) -> Result<i64> {
    let l = build_l(a, p, q)?;
    let chi = alternating_sum(&l.cohomology());
    if chi != l.euler_characteristic() {
        return Err(Error::InvalidComplex(alloc::format!(
            "Euler characteristic of L_({p},{q}) depends on ranks"
        )));
    }
    Ok(chi)
}

/// `χ_{p,q}` from the dimension grid alone.
pub fn euler_chi_pq_from_dims(a: &DoubleComplex, p: i64, q: i64) -> i64 {
    let mut chi = 0;
    for b in a.bidegrees() {
        let (r, s) = (b.p as i64, b.q as i64);
        let d = a.dim_at(b) as i64;
        let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
        if r < p && s < q {
            chi += sign * d;
        } else if r >= p && s >= q {
            chi -= sign * d;
        }
    }
    chi
}

/// Both sides of the duality identities at one `(p,q,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityVerdict {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    /// `s^k_{p,q}(A)`.
    pub s: usize,
    /// `s^{2n-1-k}_{n-p+1,n-q+1}(DA)`.
    pub s_dual: usize,
    /// `dim L^k_{p,q}(DA)`.
    pub l_dual: usize,
    /// `dim L^{2n-1-k}_{n-p+1,n-q+1}(A)`.
    pub l_partner: usize,
}

impl DualityVerdict {
    pub fn holds(&self) -> bool {
        self.s == self.s_dual && self.l_dual == self.l_partner
    }
}

/// Duality verdicts for every `k ∈ [-1, 2n]` at a fixed `(p,q)`; `dual` must be `A.dual()`.
pub fn duality_table(a: &DoubleComplex, dual: &DoubleComplex, p: i64, q: i64) -> Result<Vec<DualityVerdict>> {
    let n = a.n() as i64;
    let (pp, qq) = (n - p + 1, n - q + 1);
    let la = build_l(a, p, q)?;
    let ld_partner = build_l(dual, pp, qq)?;
    let l_dual = build_l(dual, p, q)?;
    let l_partner = build_l(a, pp, qq)?;
    let (sa, sd) = (la.cohomology(), ld_partner.cohomology());
    Ok((-1..=2 * n)
        .map(|k| {
            let j = 2 * n - 1 - k;
            DualityVerdict {
                p,
                q,
                k,
                s: sa.get(&(k as i32)).copied().unwrap_or(0),
                s_dual: sd.get(&(j as i32)).copied().unwrap_or(0),
                l_dual: l_dual.dim(k as i32),
                l_partner: l_partner.dim(j as i32),
            }
        })
        .collect())
}

/// Single-degree form of [`duality_table`].
pub fn duality_dim_check(a: &DoubleComplex, p: i64, q: i64, k: i64) -> Result<DualityVerdict> {
    let dual = a.dual()?;
    let table = duality_table(a, &dual, p, q)?;
    Ok(table.into_iter().find(|v| v.k == k).unwrap_or(DualityVerdict {
        p,
        q,
        k,
        s: 0,
        s_dual: 0,
        l_dual: 0,
        l_partner: 0,
    }))
}

/// Sign `ε` applied to `∫ α∧β` for `α ∈ L^k_{p,q}`.
///
/// Chosen so that `⟨d_L α, β⟩ + (-1)^k ⟨α, d_L β⟩ = 0` for `α` of degree `k-1`:
/// constant through the lower range, then `(-1)^k` from the corner on.
pub fn pairing_sign(p: i64, q: i64, k: i64) -> Scalar {
    let neg = !lower_range(p, q, k) && k.rem_euclid(2) == 1;
    if neg {
        Scalar::from_int(-1)
    } else {
        Scalar::ONE
    }
}

/// Full wedge-and-integrate matrix `L^k_{p,q} × L^{2n-1-k}_{n-p+1,n-q+1} → ℂ`,
/// rows indexed by the basis of the first factor.
fn raw_pairing(m: &LieComplex, left: &GradedComplex, right: &GradedComplex, p: i64, q: i64, k: i64) -> Matrix {
    let n = m.n();
    let basis = m.basis();
    let j = 2 * n as i64 - 1 - k;
    let vol = basis.volume();
    let mut out = Matrix::zeros(left.dim(k as i32), right.dim(j as i32));
    let eps = pairing_sign(p, q, k);
    for s in left.summands(k as i32) {
        let partner = s.tag.reflected(n);
        let (Some(r0), Some(c0)) = (left.offset(k as i32, s.tag), right.offset(j as i32, partner)) else {
            continue;
        };
        let rows = basis.basis(s.tag.p, s.tag.q);
        let cols = basis.basis(partner.p, partner.q);
        for (a, &x) in rows.iter().enumerate() {
            for (b, &y) in cols.iter().enumerate() {
                if x | y == vol {
                    if let Some(neg) = wedge_sign(x, y) {
                        out[(r0 + a, c0 + b)] = if neg { -eps.clone() } else { eps.clone() };
                    }
                }
            }
        }
    }
    out
}

/// Cocycle representatives of `H^k` as columns.
fn representatives(l: &GradedComplex, k: i32) -> (Subspace, Subspace, Matrix) {
    let z = Subspace::kernel(&l.diff(k));
    let b = Subspace::image(&l.diff(k - 1));
    let zb = z.basis();
    let picked = b.complement_indices(&zb);
    let reps = zb.submatrix(&(0..zb.rows()).collect::<Vec<_>>(), &picked);
    (z, b, reps)
}

/// Result of pairing `H^k(L_{p,q})` against `H^{2n-1-k}(L_{n-p+1,n-q+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub matrix: Matrix,
    pub descends: bool,
    pub perfect: bool,
}

/// Pairs cohomology classes via `ε·∫ α∧β`, checking descent first.
pub fn pairing_matrix(m: &LieComplex, p: i64, q: i64, k: i64) -> Result<PairingReport> {
    let a = m.complex();
    let n = m.n() as i64;
    let (pp, qq, j) = (n - p + 1, n - q + 1, 2 * n - 1 - k);
    let left = build_l(a, p, q)?;
    let right = build_l(a, pp, qq)?;
    let raw = raw_pairing(m, &left, &right, p, q, k);
    let (zl, bl, rl) = representatives(&left, k as i32);
    let (zr, br, rr) = representatives(&right, j as i32);
    let vanish = |x: &Matrix, y: &Matrix| x.transpose().mul(&raw).mul(y).is_zero();
    let descends = vanish(&bl.basis(), &zr.basis()) && vanish(&zl.basis(), &br.basis());
    if !descends {
        return Err(Error::PairingDescent { p: p as i32, q: q as i32, k: k as i32 });
    }
    let matrix = rl.transpose().mul(&raw).mul(&rr);
    let perfect = matrix.rows() == matrix.cols() && matrix.rank() == matrix.rows();
    Ok(PairingReport { p, q, k, matrix, descends, perfect })
}

/// `∫ α∧β` on `Λ^{r,s} × Λ^{n-r,n-s}` for the given model.
pub fn component_pairing(m: &LieComplex, r: usize, s: usize) -> Matrix {
    let basis = m.basis();
    let n = m.n();
    let vol = basis.volume();
    let rows = basis.basis(r, s);
    let cols = basis.basis(n - r, n - s);
    Matrix::from_fn(rows.len(), cols.len(), |a, b| {
        let (x, y) = (rows[a], cols[b]);
        match (x | y == vol).then(|| wedge_sign(x, y)).flatten() {
            Some(true) => Scalar::from_int(-1),
            Some(false) => Scalar::ONE,
            None => Scalar::ZERO,
        }
    })
}
