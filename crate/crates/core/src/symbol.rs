//! Principal symbols of `L_{p,q}` at a real covector.
//!
//! At `ξ = ξ^{1,0} + ξ^{0,1}` the symbol of `∂` is `ξ^{1,0}∧·` and that of `∂̄`
//! is `ξ^{0,1}∧·`. These two maps make `Λ^{•,•}(ℂ^n)` a double complex, and the
//! symbol complex of `L_{p,q}` is its Schweitzer complex.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::bicomplex::DoubleComplex;
use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, ExteriorBasis, Monomial};
use crate::graded::GradedComplex;
use crate::matrix::Matrix;
use crate::random::rng;
use crate::scalar::Scalar;
use crate::schweitzer::build_l;

/// A real covector, given by the coefficients `λ` of its `(1,0)`-part in
/// `dz_1 … dz_n`. The `(0,1)`-part is `Σ conj(λ_i) dz̄_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covector {
    pub lambda: Vec<Scalar>,
}

impl Covector {
    pub fn new(lambda: Vec<Scalar>) -> Self {
        Covector { lambda }
    }

    pub fn zero(n: usize) -> Self {
        Covector { lambda: alloc::vec![Scalar::ZERO; n] }
    }

    /// `dz_1 + dz̄_1`.
    pub fn standard(n: usize) -> Self {
        let mut c = Self::zero(n);
        if n > 0 {
            c.lambda[0] = Scalar::ONE;
        }
        c
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(Scalar::is_zero)
    }

    /// The covector `conj(ξ)` with `(1,0)`-part `conj(λ)`.
    pub fn conj(&self) -> Self {
        Covector { lambda: self.lambda.iter().map(Scalar::conj).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Covector { lambda: self.lambda.iter().map(|x| x * c).collect() }
    }

    /// Random nonzero covector with entries `(a + b i)/d`, `|a|,|b| ≤ 3`, `1 ≤ d ≤ 3`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let lambda: Vec<Scalar> = (0..n)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    let re = Scalar::ratio(rng.gen_range(-3..=3), d);
                    let im = Scalar::ratio(rng.gen_range(-3..=3), d);
                    &re + &(&im * &Scalar::I)
                })
                .collect();
            let c = Covector { lambda };
            if !c.is_zero() {
                return c;
            }
        }
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.lambda.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Matrix of `ω ↦ θ∧ω` from `Λ^{p,q}` to the bidegree one step up, for a 1-form `θ`.
fn left_multiplication(basis: &ExteriorBasis, theta: &[(Monomial, Scalar)], src: (usize, usize), dst: (usize, usize)) -> Matrix {
    let n = basis.n();
    if dst.0 > n || dst.1 > n {
        return Matrix::zeros(0, basis.dim(src.0, src.1));
    }
    let from = basis.basis(src.0, src.1);
    let mut m = Matrix::zeros(basis.dim(dst.0, dst.1), from.len());
    for (j, &w) in from.iter().enumerate() {
        for (g, c) in theta {
            if let Some(neg) = wedge_sign(*g, w) {
                let i = basis.position(g | w);
                let v = if neg { -c.clone() } else { c.clone() };
                let cur = m[(i, j)].clone();
                m[(i, j)] = &cur + &v;
            }
        }
    }
    m
}

/// `(Λ^{•,•}(ℂ^n), ξ^{1,0}∧·, ξ^{0,1}∧·)`.
pub fn symbol_double_complex(xi: &Covector) -> Result<DoubleComplex> {
    let n = xi.n();
    let basis = ExteriorBasis::new(n);
    let holo: Vec<(Monomial, Scalar)> = (0..n).map(|i| (basis.holo(i), xi.lambda[i].clone())).collect();
    let anti: Vec<(Monomial, Scalar)> = (0..n).map(|i| (basis.antiholo(i), xi.lambda[i].conj())).collect();
    let mut a = DoubleComplex::with_dims(n, |p, q| basis.dim(p, q));
    for p in 0..=n {
        for q in 0..=n {
            a.set_del(p, q, left_multiplication(&basis, &holo, (p, q), (p + 1, q)))?;
            a.set_delbar(p, q, left_multiplication(&basis, &anti, (p, q), (p, q + 1)))?;
        }
    }
    Ok(a)
}

/// The symbol complex of `L_{p,q}` at `ξ`.
///
/// The alternating dimension sum over the two regions must vanish for
/// `n ≥ 1`; a nonzero value is reported as an error before any rank work.
pub fn symbol_complex(p: i64, q: i64, xi: &Covector) -> Result<GradedComplex> {
    let a = symbol_double_complex(xi)?;
    let l = build_l(&a, p, q)?;
    if xi.n() >= 1 && l.euler_characteristic() != 0 {
        return Err(Error::InvalidComplex(format!(
            "symbol complex for n = {}, (p,q) = ({p},{q}) has Euler characteristic {}",
            xi.n(),
            l.euler_characteristic()
        )));
    }
    Ok(l)
}

/// Exactness of a symbol complex, with the first degree carrying cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub exact: bool,
    /// `(degree, dim H)` of the first non-exact degree.
    pub failing: Option<(i32, usize)>,
    /// `true` if every space of the complex is zero.
    pub trivial: bool,
}

pub fn exactness_check(p: i64, q: i64, xi: &Covector) -> Result<Exactness> {
    let l = symbol_complex(p, q, xi)?;
    let failing = l.cohomology().into_iter().find(|&(_, d)| d > 0);
    Ok(Exactness { exact: failing.is_none(), failing, trivial: l.is_zero() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseKind {
    /// `ξ = dz_1 + dz̄_1`.
    Standard,
    Random,
    /// `ξ = 0`; expected non-exact whenever the complex is nonzero.
    ZeroControl,
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseKind::Standard => "standard",
            CaseKind::Random => "random",
            CaseKind::ZeroControl => "zero-control",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCase {
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub kind: CaseKind,
    pub xi: Covector,
    pub result: Exactness,
}

impl SymbolCase {
    /// Exact for nonzero `ξ`; non-exact (or trivial) for the zero control.
    pub fn as_expected(&self) -> bool {
        match self.kind {
            CaseKind::ZeroControl => self.result.trivial || !self.result.exact,
            _ => self.result.exact,
        }
    }
}

/// Every case of an ellipticity sweep, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub cases: Vec<SymbolCase>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(SymbolCase::as_expected)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &SymbolCase> {
        self.cases.iter().filter(|c| !c.as_expected())
    }

    /// Plain-text rendering, one line per case.
    pub fn render(&self) -> String {
        let mut s = format!("symbol sweep n={} trials={} seed={}\n", self.n, self.trials, self.seed);
        for c in &self.cases {
            let verdict = match (c.result.exact, c.result.failing) {
                (true, _) => String::from("exact"),
                (false, Some((k, d))) => format!("not exact: H^{k} has dim {d}"),
                (false, None) => String::from("not exact"),
            };
            let ok = if c.as_expected() { "ok" } else { "UNEXPECTED" };
            s.push_str(&format!("p={} q={} {} xi={} {} [{}]\n", c.p, c.q, c.kind, c.xi, verdict, ok));
        }
        s
    }
}

/// Standard covector, `trials` random ones and the zero control for every
/// `(p,q) ∈ [0,n+1]²`.
pub fn ellipticity_sweep(n: usize, trials: usize, seed: u64) -> Result<Certificate> {
    let mut r = rng(seed);
    let mut cases = Vec::new();
    for p in 0..=n as i64 + 1 {
        for q in 0..=n as i64 + 1 {
            let mut xs = alloc::vec![(CaseKind::Standard, Covector::standard(n))];
            xs.extend((0..trials).map(|_| (CaseKind::Random, Covector::random(n, &mut r))));
            xs.push((CaseKind::ZeroControl, Covector::zero(n)));
            for (kind, xi) in xs {
                let result = exactness_check(p, q, &xi)?;
                cases.push(SymbolCase { n, p, q, kind, xi, result });
            }
        }
    }
    Ok(Certificate { n, trials, seed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_corner_is_isomorphism() {
        let l = symbol_complex(1, 1, &Covector::standard(1)).unwrap();
        assert_eq!(l.dim(0), 1);
        assert_eq!(l.dim(1), 1);
        assert_eq!(l.diff(0).rank(), 1);
    }

    #[test]
    fn zero_symbol_not_exact() {
        let e = exactness_check(1, 1, &Covector::zero(1)).unwrap();
        assert!(!e.exact);
        assert_eq!(e.failing, Some((0, 1)));
    }

    #[test]
    fn small_sweep_passes_and_is_deterministic() {
        let a = ellipticity_sweep(2, 2, 7).unwrap();
        assert!(a.passed());
        assert_eq!(a.render(), ellipticity_sweep(2, 2, 7).unwrap().render());
    }

    #[test]
    fn symbol_complex_is_double_complex() {
        let mut r = rng(3);
        for n in 1..=3 {
            assert!(symbol_double_complex(&Covector::random(n, &mut r)).unwrap().is_valid());
        }
    }
}
