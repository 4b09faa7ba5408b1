//! Dolbeault double complexes of left-invariant forms from structure equations.
//!
//! A model is given by `dω^i = Σ c^i_{jk} ω^j∧ω^k + Σ c^i_{j\bar k} ω^j∧ω̄^k`
//! with coefficients polynomial in a real parameter `t`. The conjugate
//! equations are obtained by literal conjugation, and `d` is extended to
//! `Λ^{•,•}` by the graded Leibniz rule.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bicomplex::DoubleComplex;
use crate::error::{Error, ParseError, Result};
use crate::exterior::{wedge_sign, ExteriorBasis, Form, Monomial};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Polynomial in `t` with Gaussian-rational coefficients, ascending powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::from_coeffs(vec![Scalar::ZERO, Scalar::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::ZERO, |acc, c| &(&acc * t) + c)
    }

    /// Conjugate coefficients (the parameter is real).
    pub fn conj(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    fn add_monomial(&mut self, power: usize, c: Scalar) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, Scalar::ZERO);
        }
        self.coeffs[power] += &c;
        *self = Poly::from_coeffs(core::mem::take(&mut self.coeffs));
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_real() {
                Some(r) => (r.is_negative(), r.abs().to_string()),
                None => (false, format!("({c})")),
            };
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match power {
                0 => f.write_str(&body)?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    f.write_str("t")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = ParseError;

    /// Sums of terms `c`, `c*t`, `c*t^k`, `t^k` where `c` is a rational, `i`,
    /// `c*i`, or a parenthesised Gaussian rational.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let bad = || ParseError::Poly(String::from(s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<&str> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    // A sign right after '^' or '*' belongs to the current term.
                    let prev = compact[..i].chars().last();
                    if !matches!(prev, Some('^') | Some('*')) {
                        terms.push(&compact[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        terms.push(&compact[start..]);

        let mut poly = Poly::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            // Locate a `t` outside parentheses.
            let mut depth = 0i32;
            let mut tpos = None;
            for (i, ch) in body.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    't' if depth == 0 => tpos = Some(i),
                    _ => {}
                }
            }
            let (coeff_str, power) = match tpos {
                None => (body, 0usize),
                Some(i) => {
                    let rest = &body[i + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?
                    };
                    let c = &body[..i];
                    (c.strip_suffix('*').unwrap_or(c), power)
                }
            };
            let coeff = if coeff_str.is_empty() {
                Scalar::ONE
            } else {
                coeff_str.parse::<Scalar>().map_err(|_| bad())?
            };
            poly.add_monomial(power, if neg { -coeff } else { coeff });
        }
        Ok(poly)
    }
}

/// One summand `coeff · ω^a ∧ (ω^b or ω̄^b)` of a structure equation; indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub a: usize,
    pub b: usize,
    pub coeff: Poly,
}

/// The right-hand side of `dω^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureEquation {
    /// `coeff · ω^a ∧ ω^b`.
    pub terms20: Vec<Term>,
    /// `coeff · ω^a ∧ ω̄^b`.
    pub terms11: Vec<Term>,
    /// `coeff · ω̄^a ∧ ω̄^b`; any nonzero value is rejected as non-integrable.
    pub terms02: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModel {
    pub n: usize,
    /// `equations[i]` describes `dω^{i+1}`.
    pub equations: Vec<StructureEquation>,
}

impl LieModel {
    /// All generators closed: the complex torus.
    pub fn abelian(n: usize) -> Self {
        LieModel { n, equations: vec![StructureEquation::default(); n] }
    }

    /// Adds `coeff · ω^a ∧ ω^b` to `dω^i` (1-based indices, as in the document format).
    pub fn with20(mut self, i: usize, a: usize, b: usize, coeff: Poly) -> Self {
        self.equations[i - 1].terms20.push(Term { a: a - 1, b: b - 1, coeff });
        self
    }

    /// Adds `coeff · ω^a ∧ ω̄^b` to `dω^i` (1-based indices).
    pub fn with11(mut self, i: usize, a: usize, b: usize, coeff: Poly) -> Self {
        self.equations[i - 1].terms11.push(Term { a: a - 1, b: b - 1, coeff });
        self
    }

    /// True if no coefficient depends on `t`.
    pub fn is_constant(&self) -> bool {
        self.equations.iter().all(|e| {
            e.terms20.iter().chain(&e.terms11).chain(&e.terms02).all(|t| t.coeff.is_constant())
        })
    }

    fn check_indices(&self) -> Result<()> {
        if self.equations.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} structure equations for n = {}",
                self.equations.len(),
                self.n
            )));
        }
        for (i, e) in self.equations.iter().enumerate() {
            for t in e.terms20.iter().chain(&e.terms11).chain(&e.terms02) {
                if t.a >= self.n || t.b >= self.n {
                    return Err(Error::DimensionMismatch(format!(
                        "dω^{}: generator index out of range 1..={}",
                        i + 1,
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A model evaluated at a parameter value: the double complex plus its product structure.
#[derive(Clone, Debug)]
pub struct LieComplex {
    basis: ExteriorBasis,
    complex: DoubleComplex,
    /// `d` of each generator, indexed by bit.
    generator_d: Vec<Form>,
}

impl LieComplex {
    pub fn complex(&self) -> &DoubleComplex {
        &self.complex
    }

    pub fn into_complex(self) -> DoubleComplex {
        self.complex
    }

    pub fn basis(&self) -> &ExteriorBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn wedge(&self, a: &Form, b: &Form) -> Form {
        a.wedge(b)
    }

    /// Coefficient of `ω^{1..n} ∧ ω̄^{1..n}`.
    pub fn integrate(&self, f: &Form) -> Scalar {
        f.top_coefficient(&self.basis)
    }

    /// The form whose coordinates in the `Λ^{p,q}` basis are `v`.
    pub fn form(&self, p: usize, q: usize, v: &[Scalar]) -> Form {
        let mut f = Form::zero();
        for (m, c) in self.basis.basis(p, q).iter().zip(v) {
            f.add_term(*m, c);
        }
        f
    }

    /// Exterior derivative of an arbitrary form.
    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in f.terms() {
            out.add(&leibniz(&self.generator_d, m).scaled(c));
        }
        out
    }
}

fn leibniz(generator_d: &[Form], m: Monomial) -> Form {
    let mut out = Form::zero();
    let mut prefix: Monomial = 0;
    let mut rest = m;
    let mut odd = false;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        for (x, c) in generator_d[bit].terms() {
            let Some(s1) = wedge_sign(prefix, x) else { continue };
            let Some(s2) = wedge_sign(prefix | x, rest) else { continue };
            let neg = s1 ^ s2 ^ odd;
            out.add_term(prefix | x | rest, &if neg { -c } else { c.clone() });
        }
        prefix |= 1 << bit;
        odd = !odd;
    }
    out
}

/// Evaluates `model` at `t` and builds its double complex `(Λ^{•,•}, ∂, ∂̄)`.
pub fn lie_model(model: &LieModel, t: &Scalar) -> Result<LieComplex> {
    model.check_indices()?;
    let n = model.n;
    let basis = ExteriorBasis::new(n);
    let mut generator_d = vec![Form::zero(); 2 * n];
    for (i, eq) in model.equations.iter().enumerate() {
        if eq.terms02.iter().any(|term| !term.coeff.eval(t).is_zero()) {
            return Err(Error::NonIntegrable { t: t.to_string(), index: i + 1 });
        }
        let mut f = Form::zero();
        for term in &eq.terms20 {
            let m = Form::monomial(basis.holo(term.a), Scalar::ONE)
                .wedge(&Form::monomial(basis.holo(term.b), Scalar::ONE));
            f.add(&m.scaled(&term.coeff.eval(t)));
        }
        for term in &eq.terms11 {
            let m = Form::monomial(basis.holo(term.a) | basis.antiholo(term.b), Scalar::ONE);
            f.add(&m.scaled(&term.coeff.eval(t)));
        }
        let conj = f.conj(&basis);
        generator_d[i] = f;
        generator_d[n + i] = conj;
    }
    for bit in 0..2 * n {
        let mut dd = Form::zero();
        for (m, c) in generator_d[bit].terms() {
            dd.add(&leibniz(&generator_d, m).scaled(c));
        }
        if !dd.is_zero() {
            let name = if bit < n { format!("ω^{}", bit + 1) } else { format!("ω̄^{}", bit - n + 1) };
            return Err(Error::NotFlat { t: t.to_string(), generator: name });
        }
    }

    let mut complex = DoubleComplex::with_dims(n, |p, q| basis.dim(p, q));
    for p in 0..=n {
        for q in 0..=n {
            let src = basis.basis(p, q);
            let mut del = Matrix::zeros(if p < n { basis.dim(p + 1, q) } else { 0 }, src.len());
            let mut delbar = Matrix::zeros(if q < n { basis.dim(p, q + 1) } else { 0 }, src.len());
            for (j, &m) in src.iter().enumerate() {
                for (x, c) in leibniz(&generator_d, m).terms() {
                    let row = basis.position(x);
                    match basis.bidegree(x) {
                        (a, b) if a == p + 1 && b == q => del[(row, j)] = c.clone(),
                        (a, b) if a == p && b == q + 1 => delbar[(row, j)] = c.clone(),
                        _ => unreachable!("d leaves bidegrees (p+1,q) and (p,q+1) only"),
                    }
                }
            }
            complex.set_del(p, q, del)?;
            complex.set_delbar(p, q, delbar)?;
        }
    }
    Ok(LieComplex { basis, complex, generator_d })
}
