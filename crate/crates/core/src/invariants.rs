//! Classical invariants of a double complex and the index identities between them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bicomplex::DoubleComplex;
use crate::error::{Error, Result};
use crate::graded::GradedComplex;
use crate::schweitzer::{euler_chi_pq, s_dims};
use crate::subspace::Subspace;

/// Counts indexed `[p][q]` over `[0,n]²`.
pub type Grid = Vec<Vec<usize>>;

fn grid(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Grid {
    (0..=n).map(|p| (0..=n).map(|q| f(p, q)).collect()).collect()
}

/// `h^{p,q}_∂̄ = dim ker ∂̄ − rank ∂̄_in`.
pub fn dolbeault(a: &DoubleComplex) -> Result<Grid> {
    a.require_valid()?;
    Ok(grid(a.n(), |p, q| {
        let (pi, qi) = (p as i64, q as i64);
        a.dim(pi, qi) - a.delbar(p, q).rank() - a.delbar_any(pi, qi - 1).rank()
    }))
}

/// `(ker ∂ ∩ ker ∂̄) / im ∂∂̄`.
pub fn bott_chern_direct(a: &DoubleComplex) -> Result<Grid> {
    a.require_valid()?;
    Ok(grid(a.n(), |p, q| {
        let (pi, qi) = (p as i64, q as i64);
        let closed = a.dim(pi, qi) - a.del(p, q).vstack(a.delbar(p, q)).rank();
        closed - a.del_delbar(pi - 1, qi - 1).rank()
    }))
}

/// `ker ∂∂̄ / (im ∂ + im ∂̄)`.
pub fn aeppli_direct(a: &DoubleComplex) -> Result<Grid> {
    a.require_valid()?;
    Ok(grid(a.n(), |p, q| {
        let (pi, qi) = (p as i64, q as i64);
        let kernel = a.dim(pi, qi) - a.del_delbar(pi, qi).rank();
        kernel - a.del_any(pi - 1, qi).hstack(&a.delbar_any(pi, qi - 1)).rank()
    }))
}

/// `b_k` for `k ∈ [0, 2n]`.
pub fn de_rham(a: &DoubleComplex) -> Result<Vec<usize>> {
    Ok(a.total_complex()?.cohomology().values().copied().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// Filtration by `p` (columns); `E_1` is Dolbeault cohomology.
    Column,
    /// Filtration by `q` (rows); computed as the column sequence of the conjugate.
    Row,
}

/// One page of a Frölicher spectral sequence, indexed `[p][q]` in the
/// coordinates of the input complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    pub dims: Grid,
    /// Rank of `d_r` leaving `(p,q)`.
    pub rank_out: Grid,
    /// Rank of `d_r` arriving at `(p,q)`.
    pub rank_in: Grid,
}

/// Pages `E_0 … E_{n+2}`; the last one is `E_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frolicher {
    pub orientation: Orientation,
    pub pages: Vec<Page>,
}

impl Frolicher {
    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    pub fn e_infinity(&self) -> &Grid {
        &self.pages.last().expect("at least one page").dims
    }
}

/// Filtration steps `Z_r^p` of the total complex, memoised per `(k, p, r)`.
struct Filtration<'a> {
    total: &'a GradedComplex,
    memo: BTreeMap<(i64, i64, i64), Subspace>,
}

impl<'a> Filtration<'a> {
    fn new(total: &'a GradedComplex) -> Self {
        Filtration { total, memo: BTreeMap::new() }
    }

    /// `F^p C^k`: blocks with first index `≥ p`.
    fn step(&self, k: i64, p: i64) -> Subspace {
        let mut axes = Vec::new();
        let mut off = 0;
        for s in self.total.summands(k as i32) {
            if s.tag.p as i64 >= p {
                axes.extend(off..off + s.dim);
            }
            off += s.dim;
        }
        Subspace::coordinate(self.total.dim(k as i32), axes)
    }

    /// `Z_r^p(C^k) = F^p ∩ d^{-1}(F^{p+r})`.
    fn z(&mut self, k: i64, p: i64, r: i64) -> Subspace {
        if let Some(s) = self.memo.get(&(k, p, r)) {
            return s.clone();
        }
        let d = self.total.diff(k as i32);
        let target = self.step(k + 1, p + r);
        let z = self
            .step(k, p)
            .intersection(&target.preimage(&d).expect("shapes agree"))
            .expect("shapes agree");
        self.memo.insert((k, p, r), z.clone());
        z
    }

    /// `d Z_r^p(C^{k-1}) ⊂ C^k`.
    fn dz(&mut self, k: i64, p: i64, r: i64) -> Subspace {
        let z = self.z(k - 1, p, r);
        z.map(&self.total.diff(k as i32 - 1)).expect("shapes agree")
    }

    fn sum_dim(a: &Subspace, b: &Subspace) -> usize {
        a.sum(b).expect("shapes agree").dim()
    }

    /// `(e_r, rank d_r out, rank d_r in)` at `(p,q)`.
    fn entry(&mut self, p: i64, q: i64, r: i64) -> (usize, usize, usize) {
        let k = p + q;
        // For r = 0, Z_{-1}^{p+1} = F^{p+1}, which `z` produces unchanged.
        let z_prev_up = self.z(k, p + 1, r - 1);
        let dz_prev = self.dz(k, p - r + 1, r - 1);
        let zr = self.z(k, p, r);
        let denom = Self::sum_dim(&z_prev_up, &dz_prev);
        let e = zr.dim() - denom;
        let out = zr.dim() - Self::sum_dim(&self.z(k, p, r + 1), &z_prev_up);
        let into = Self::sum_dim(&self.dz(k, p - r, r), &z_prev_up) - denom;
        (e, out, into)
    }
}

fn column_pages(a: &DoubleComplex) -> Vec<Page> {
    let n = a.n();
    let total = a.total_unchecked();
    let mut f = Filtration::new(&total);
    (0..=n + 2)
        .map(|r| {
            let mut dims = grid(n, |_, _| 0);
            let mut rank_out = dims.clone();
            let mut rank_in = dims.clone();
            for p in 0..=n {
                for q in 0..=n {
                    let (e, o, i) = f.entry(p as i64, q as i64, r as i64);
                    dims[p][q] = e;
                    rank_out[p][q] = o;
                    rank_in[p][q] = i;
                }
            }
            Page { r, dims, rank_out, rank_in }
        })
        .collect()
}

fn transpose(g: &Grid) -> Grid {
    let n = g.len();
    (0..n).map(|p| (0..n).map(|q| g[q][p]).collect()).collect()
}

/// The Frölicher spectral sequence in the given orientation.
///
/// Fails if the page recursion `e_{r+1} = e_r − out − in` breaks or the
/// sequence has not stabilised by `E_{n+1}`.
pub fn frolicher(a: &DoubleComplex, orientation: Orientation) -> Result<Frolicher> {
    a.require_valid()?;
    let pages = match orientation {
        Orientation::Column => column_pages(a),
        Orientation::Row => column_pages(&a.swapped_unchecked())
            .into_iter()
            .map(|pg| Page {
                r: pg.r,
                dims: transpose(&pg.dims),
                rank_out: transpose(&pg.rank_out),
                rank_in: transpose(&pg.rank_in),
            })
            .collect(),
    };
    for w in pages.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        for (p, row) in cur.dims.iter().enumerate() {
            for (q, &e) in row.iter().enumerate() {
                if next.dims[p][q] + cur.rank_out[p][q] + cur.rank_in[p][q] != e {
                    return Err(Error::InvalidComplex(alloc::format!(
                        "page recursion fails at r = {}, ({p},{q})",
                        cur.r
                    )));
                }
            }
        }
    }
    let n = a.n();
    if pages[n + 1].dims != pages[n + 2].dims {
        return Err(Error::InvalidComplex(alloc::format!("spectral sequence not stable at E_{}", n + 1)));
    }
    Ok(Frolicher { orientation, pages })
}

/// `FD^{p,q} = e_1^{p,q} − e_∞^{p,q}` in the column orientation.
pub fn fd_defect(a: &DoubleComplex, p: usize, q: usize) -> Result<usize> {
    let f = frolicher(a, Orientation::Column)?;
    Ok(fd_from(&f, p, q))
}

fn fd_from(f: &Frolicher, p: usize, q: usize) -> usize {
    f.page(1).dims[p][q] - f.e_infinity()[p][q]
}

/// `dim gr_F^p gr_F̄^q H^k` of the total complex, as `[k][p][q]` over
/// `k ∈ [0,2n]`, `p, q ∈ [0,n]`.
pub fn grgr_derham(a: &DoubleComplex) -> Result<Vec<Grid>> {
    let total = a.total_complex()?;
    let n = a.n();
    let mut out = Vec::with_capacity(2 * n + 1);
    for k in 0..=2 * n as i32 {
        let z = Subspace::kernel(&total.diff(k));
        let b = Subspace::image(&total.diff(k - 1));
        let dim = total.dim(k);
        let step = |pick: &dyn Fn(usize, usize) -> bool| {
            let mut axes = Vec::new();
            let mut off = 0;
            for s in total.summands(k) {
                if pick(s.tag.p, s.tag.q) {
                    axes.extend(off..off + s.dim);
                }
                off += s.dim;
            }
            let f = Subspace::coordinate(dim, axes);
            z.intersection(&f).and_then(|x| x.sum(&b)).expect("shapes agree")
        };
        let u: Vec<Subspace> = (0..=n + 1).map(|p| step(&|r, _| r >= p)).collect();
        let v: Vec<Subspace> = (0..=n + 1).map(|q| step(&|_, s| s >= q)).collect();
        let mut w = vec![vec![0i64; n + 2]; n + 2];
        for p in 0..=n + 1 {
            for q in 0..=n + 1 {
                w[p][q] = (u[p].intersection(&v[q]).expect("shapes agree").dim() - b.dim()) as i64;
            }
        }
        out.push(grid(n, |p, q| (w[p][q] - w[p + 1][q] - w[p][q + 1] + w[p + 1][q + 1]) as usize));
    }
    Ok(out)
}

/// `χ_p = Σ_q (-1)^q h^{p,q}_∂̄` for `p ∈ [0,n]`.
pub fn chi_p(a: &DoubleComplex) -> Result<Vec<i64>> {
    Ok(chi_from_dolbeault(&dolbeault(a)?))
}

fn chi_from_dolbeault(h: &Grid) -> Vec<i64> {
    h.iter()
        .map(|row| row.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum())
        .collect()
}

/// Two sides of a scalar identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub label: alloc::string::String,
    pub lhs: i64,
    pub rhs: i64,
}

impl Comparison {
    pub fn new(label: impl Into<alloc::string::String>, lhs: i64, rhs: i64) -> Self {
        Comparison { label: label.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A list of comparisons; passes iff all hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub checks: Vec<Comparison>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Comparison::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

/// `χ_p = (-1)^n χ_{n-p}` for every `p`.
pub fn serre_chi_check(a: &DoubleComplex) -> Result<Verdict> {
    let chi = chi_p(a)?;
    let n = a.n();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let checks = (0..=n)
        .map(|p| Comparison::new(alloc::format!("chi_{p} = (-1)^{n} chi_{}", n - p), chi[p], sign * chi[n - p]))
        .collect();
    Ok(Verdict { checks })
}

/// `Σ_{k=p}^{n-q} (-1)^{k+1} χ_k`, with `χ_k = 0` outside `[0,n]`.
///
/// The sum is oriented: for `n-q < p-1` it means `-Σ_{k=n-q+1}^{p-1}`, which is
/// what the identity with `χ_{p,q}` requires once `p + q > n + 1`.
pub fn chi_partial_sum(chi: &[i64], n: usize, p: i64, q: i64) -> i64 {
    let term = |k: i64| {
        if k < 0 || k > n as i64 {
            0
        } else if k % 2 == 0 {
            -chi[k as usize]
        } else {
            chi[k as usize]
        }
    };
    let hi = n as i64 - q;
    if hi >= p - 1 {
        (p..=hi).map(term).sum()
    } else {
        -(hi + 1..p).map(term).sum::<i64>()
    }
}

/// `χ_{p,q} = Σ_{k=p}^{n-q} (-1)^{k+1} χ_k`.
pub fn euler_identity_check(a: &DoubleComplex, p: i64, q: i64) -> Result<Comparison> {
    let chi = chi_p(a)?;
    Ok(Comparison::new(
        alloc::format!("chi_({p},{q}) = sum (-1)^(k+1) chi_k, k = {p}..{}", a.n() as i64 - q),
        euler_chi_pq(a, p, q)?,
        chi_partial_sum(&chi, a.n(), p, q),
    ))
}

/// True if `D[r][s] = D[n-s][n-r]`; otherwise the first offending cell.
pub fn check_symmetric(d: &[Vec<i64>], n: usize) -> Result<()> {
    for r in 0..=n {
        for s in 0..=n {
            if d[r][s] != d[n - s][n - r] {
                return Err(Error::AsymmetricGrid(r, s));
            }
        }
    }
    Ok(())
}

/// The dimension identity
/// `Σ_{r<p,s<q}(-1)^{r+s}D[r][s] + Σ_{r≥p,s≥q}(-1)^{r+s-1}D[r][s] = Σ_{r=p}^{n-q}(-1)^{r+1}Σ_s(-1)^s D[r][s]`
/// for a grid with `D[r][s] = D[n-s][n-r]`.
pub fn ktheory_dims_identity(d: &[Vec<i64>], n: usize, p: i64, q: i64) -> Result<Comparison> {
    if d.len() != n + 1 || d.iter().any(|row| row.len() != n + 1) {
        return Err(Error::DimensionMismatch(alloc::format!("grid must be {0}x{0}", n + 1)));
    }
    check_symmetric(d, n)?;
    let mut lhs = 0;
    for r in 0..=n as i64 {
        for s in 0..=n as i64 {
            let v = d[r as usize][s as usize];
            let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
            if r < p && s < q {
                lhs += sign * v;
            } else if r >= p && s >= q {
                lhs -= sign * v;
            }
        }
    }
    let rows: Vec<i64> = d
        .iter()
        .map(|row| row.iter().enumerate().map(|(s, &v)| if s % 2 == 0 { v } else { -v }).sum())
        .collect();
    Ok(Comparison::new(
        alloc::format!("K-class identity at ({p},{q})"),
        lhs,
        chi_partial_sum(&rows, n, p, q),
    ))
}

/// The two `n = 3` Frölicher-defect identities
/// `e_∞^{0,1} = b_1 − h_BC^{0,1}` and `FD^{0,2} = h_BC^{0,3} + s^2_{1,0} − b_3`.
pub fn frolicher_defect_identities_n3(a: &DoubleComplex) -> Result<Verdict> {
    if a.n() != 3 {
        return Err(Error::DimensionMismatch(alloc::format!("expected n = 3, got {}", a.n())));
    }
    let f = frolicher(a, Orientation::Column)?;
    let b = de_rham(a)?;
    let bc = bott_chern_direct(a)?;
    let s = s_dims(a, 1, 0)?;
    let s2 = s.get(&2).copied().unwrap_or(0) as i64;
    Ok(Verdict {
        checks: vec![
            Comparison::new("e_inf^{0,1} = b_1 - h_BC^{0,1}", f.e_infinity()[0][1] as i64, b[1] as i64 - bc[0][1] as i64),
            Comparison::new(
                "FD^{0,2} = h_BC^{0,3} + s^2_{1,0} - b_3",
                fd_from(&f, 0, 2) as i64,
                bc[0][3] as i64 + s2 - b[3] as i64,
            ),
        ],
    })
}

/// Everything [`crate::invariants`] computes, in one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub dims: Grid,
    pub h_dolbeault: Grid,
    pub h_bc: Grid,
    pub h_a: Grid,
    pub betti: Vec<usize>,
    pub fss_col: Frolicher,
    pub fss_row: Frolicher,
    /// `[k][p][q]`.
    pub grgr: Vec<Grid>,
    pub chi_p: Vec<i64>,
}

impl InvariantReport {
    pub fn new(a: &DoubleComplex) -> Result<Self> {
        let h_dolbeault = dolbeault(a)?;
        let report = InvariantReport {
            n: a.n(),
            dims: a.dims_grid(),
            chi_p: chi_from_dolbeault(&h_dolbeault),
            h_dolbeault,
            h_bc: bott_chern_direct(a)?,
            h_a: aeppli_direct(a)?,
            betti: de_rham(a)?,
            fss_col: frolicher(a, Orientation::Column)?,
            fss_row: frolicher(a, Orientation::Row)?,
            grgr: grgr_derham(a)?,
        };
        report.check_masses()?;
        Ok(report)
    }

    /// `Σ_{p+q=k} e_∞^{p,q} = b_k = Σ_{p,q} grgr[k][p][q]`.
    fn check_masses(&self) -> Result<()> {
        for (k, &b) in self.betti.iter().enumerate() {
            let mut inf = 0;
            for p in 0..=self.n.min(k) {
                if k - p <= self.n {
                    inf += self.fss_col.e_infinity()[p][k - p];
                }
            }
            let gg: usize = self.grgr[k].iter().flatten().sum();
            if inf != b || gg != b {
                return Err(Error::InvalidComplex(alloc::format!(
                    "b_{k} = {b} but e_inf mass {inf}, grgr mass {gg}"
                )));
            }
        }
        Ok(())
    }

    pub fn fd(&self, p: usize, q: usize) -> usize {
        fd_from(&self.fss_col, p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::lie::lie_model;
    use crate::scalar::Scalar;
    use crate::shapes::{make_dot, make_square, make_zigzag, ZigzagShape};

    fn model(m: &crate::lie::LieModel) -> DoubleComplex {
        lie_model(m, &Scalar::ZERO).unwrap().into_complex()
    }

    #[test]
    fn torus_numbers() {
        let a = model(&builtin::torus(2));
        let r = InvariantReport::new(&a).unwrap();
        assert_eq!(r.betti, vec![1, 4, 6, 4, 1]);
        assert_eq!(r.h_dolbeault, a.dims_grid());
        assert!(r.fss_col.pages.iter().skip(1).all(|pg| pg.rank_out.iter().flatten().all(|&x| x == 0)));
        assert_eq!(r.chi_p, vec![0, 0, 0]);
    }

    #[test]
    fn iwasawa_numbers() {
        let a = model(&builtin::iwasawa());
        let r = InvariantReport::new(&a).unwrap();
        assert_eq!(r.h_dolbeault[1][0], 3);
        assert_eq!(r.h_dolbeault[0][1], 2);
        assert_eq!(r.betti[1], 4);
        assert_eq!(r.h_bc[0][1], 2);
        assert_eq!(r.fss_col.e_infinity()[0][1], 2);
        assert!(frolicher_defect_identities_n3(&a).unwrap().passed());
    }

    #[test]
    fn kodaira_thurston_betti() {
        assert_eq!(de_rham(&model(&builtin::kodaira_thurston())).unwrap()[1], 3);
    }

    #[test]
    fn squares_vanish() {
        let r = InvariantReport::new(&make_square(0, 0, 1).unwrap()).unwrap();
        assert!(r.h_dolbeault.iter().flatten().all(|&x| x == 0));
        assert!(r.h_bc.iter().chain(&r.h_a).flatten().all(|&x| x == 0));
        assert!(r.grgr.iter().flatten().flatten().all(|&x| x == 0));
    }

    #[test]
    fn zigzag_examples() {
        let b = crate::bicomplex::Bidegree::new;
        let col = make_zigzag(&ZigzagShape::from_dots(vec![b(0, 0), b(0, 1)]).unwrap(), 1).unwrap();
        let h = dolbeault(&col).unwrap();
        assert_eq!((h[0][0], h[0][1]), (0, 0));
        assert!(frolicher(&col, Orientation::Column).unwrap().page(1).dims.iter().flatten().all(|&x| x == 0));
        let l = make_zigzag(&ZigzagShape::from_dots(vec![b(0, 1), b(0, 0), b(1, 0)]).unwrap(), 1).unwrap();
        assert_eq!(de_rham(&l).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn dot_grgr_and_serre() {
        let d = make_dot(0, 0, 1).unwrap();
        let g = grgr_derham(&d).unwrap();
        assert_eq!(g[0][0][0], 1);
        assert_eq!(g.iter().flatten().flatten().sum::<usize>(), 1);
        let v = serre_chi_check(&d).unwrap();
        assert!(!v.passed());
        let e = euler_identity_check(&d, 1, 1).unwrap();
        assert_eq!((e.lhs, e.rhs), (1, 0));
    }

    #[test]
    fn ktheory_examples() {
        let binom = [1i64, 3, 3, 1];
        let d: Vec<Vec<i64>> = (0..4).map(|r| (0..4).map(|s| binom[r] * binom[s]).collect()).collect();
        let c = ktheory_dims_identity(&d, 3, 2, 1).unwrap();
        assert_eq!((c.lhs, c.rhs), (0, 0));
        let ones = vec![vec![1i64; 3]; 3];
        for p in 0..=3 {
            for q in 0..=3 {
                assert!(ktheory_dims_identity(&ones, 2, p, q).unwrap().holds(), "({p},{q})");
            }
        }
        let mut bad = ones.clone();
        bad[0][1] = 5;
        assert!(ktheory_dims_identity(&bad, 2, 1, 1).is_err());
    }
}
