//! Exterior algebra on `ω^1..ω^n, ω̄^1..ω̄^n` with wedge monomials as bitmasks.
//!
//! Bit `i` (`i < n`) is `ω^{i+1}` and bit `n + j` is `ω̄^{j+1}`. A mask stands
//! for the wedge of its generators in increasing bit order, i.e. `ω^I ∧ ω̄^J`
//! with `I`, `J` increasing. Every sign in the crate derives from this ordering.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

pub type Monomial = u32;

/// Sign of `a ∧ b` relative to the sorted monomial `a | b`, or `None` if they share a generator.
pub fn wedge_sign(a: Monomial, b: Monomial) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    Some(inversions % 2 == 1)
}

/// Lexicographically ordered `k`-subsets of `0..n` as bitmasks.
pub fn subsets(n: usize, k: usize) -> Vec<Monomial> {
    fn rec(start: usize, n: usize, k: usize, acc: Monomial, out: &mut Vec<Monomial>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Bases of `Λ^{p,q}` for all `(p,q) ∈ [0,n]²` with a reverse index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorBasis {
    n: usize,
    /// `bases[p][q]`: monomials `ω^I ∧ ω̄^J`, lexicographic on `(I, J)`.
    bases: Vec<Vec<Vec<Monomial>>>,
    /// Position of each mask inside its bidegree's basis.
    position: Vec<usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= 15, "exterior basis limited to n <= 15");
        let mut position = vec![0; 1 << (2 * n)];
        let bases: Vec<Vec<Vec<Monomial>>> = (0..=n)
            .map(|p| {
                (0..=n)
                    .map(|q| {
                        let mut b = Vec::new();
                        for i in subsets(n, p) {
                            for j in subsets(n, q) {
                                b.push(i | (j << n));
                            }
                        }
                        for (k, &m) in b.iter().enumerate() {
                            position[m as usize] = k;
                        }
                        b
                    })
                    .collect()
            })
            .collect();
        ExteriorBasis { n, bases, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self, p: usize, q: usize) -> &[Monomial] {
        &self.bases[p][q]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.bases[p][q].len()
    }

    pub fn position(&self, m: Monomial) -> usize {
        self.position[m as usize]
    }

    pub fn bidegree(&self, m: Monomial) -> (usize, usize) {
        let low = (1u32 << self.n) - 1;
        ((m & low).count_ones() as usize, (m >> self.n).count_ones() as usize)
    }

    pub fn holo(&self, i: usize) -> Monomial {
        1 << i
    }

    pub fn antiholo(&self, i: usize) -> Monomial {
        1 << (self.n + i)
    }

    /// `ω^{1..n} ∧ ω̄^{1..n}`.
    pub fn volume(&self) -> Monomial {
        ((1u64 << (2 * self.n)) - 1) as Monomial
    }

    /// Conjugate of a monomial: each `ω^i ↔ ω̄^i` in place, then re-sorted.
    pub fn conj_monomial(&self, m: Monomial) -> (bool, Monomial) {
        let mut acc: Monomial = 0;
        let mut neg = false;
        let mut rest = m;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let g = if b < self.n { 1 << (b + self.n) } else { 1 << (b - self.n) };
            let s = wedge_sign(acc, g).expect("distinct generators");
            neg ^= s;
            acc |= g;
        }
        (neg, acc)
    }
}

/// A form: a sparse combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut f = Form::zero();
        f.add_term(m, &c);
        f
    }

    pub fn one() -> Self {
        Form::monomial(0, Scalar::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(Scalar::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &Form) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Form {
        let mut f = Form::zero();
        for (m, x) in &self.terms {
            f.add_term(*m, &(x * c));
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or(Scalar::ZERO)
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(neg) = wedge_sign(*a, *b) {
                    let c = x * y;
                    out.add_term(a | b, &if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Coefficient of the volume monomial: integration on a model.
    pub fn top_coefficient(&self, basis: &ExteriorBasis) -> Scalar {
        self.coefficient(basis.volume())
    }

    /// Entrywise conjugation of coefficients together with `ω ↔ ω̄`.
    pub fn conj(&self, basis: &ExteriorBasis) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            let (neg, cm) = basis.conj_monomial(*m);
            let c = c.conj();
            out.add_term(cm, &if neg { -c } else { c });
        }
        out
    }

    /// Component of bidegree `(p, q)`.
    pub fn component(&self, basis: &ExteriorBasis, p: usize, q: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| basis.bidegree(**m) == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation_and_unit() {
        let b = ExteriorBasis::new(2);
        let w1 = Form::monomial(b.holo(0), Scalar::ONE);
        assert!(w1.wedge(&w1).is_zero());
        assert_eq!(w1.wedge(&Form::one()), w1);
    }

    #[test]
    fn graded_commutativity() {
        let b = ExteriorBasis::new(2);
        let x = Form::monomial(b.holo(0), Scalar::ONE);
        let y = Form::monomial(b.antiholo(1), Scalar::ONE);
        assert_eq!(x.wedge(&y), y.wedge(&x).scaled(&Scalar::from_int(-1)));
    }

    #[test]
    fn volume_pairing_sign() {
        // (ω^1∧ω̄^1) ∧ (ω^2∧ω̄^2) = -ω^1∧ω^2∧ω̄^1∧ω̄^2: one transposition.
        let b = ExteriorBasis::new(2);
        let a = Form::monomial(b.holo(0) | b.antiholo(0), Scalar::ONE);
        let c = Form::monomial(b.holo(1) | b.antiholo(1), Scalar::ONE);
        assert_eq!(a.wedge(&c).top_coefficient(&b), Scalar::from_int(-1));
    }

    #[test]
    fn basis_order_and_dims() {
        let b = ExteriorBasis::new(3);
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        for p in 0..=3 {
            for q in 0..=3 {
                let c = [1, 3, 3, 1];
                assert_eq!(b.dim(p, q), c[p] * c[q]);
            }
        }
        let m = b.basis(1, 1)[4];
        assert_eq!(b.position(m), 4);
    }

    #[test]
    fn conjugation_is_involutive() {
        let b = ExteriorBasis::new(2);
        let f = Form::monomial(b.holo(0) | b.antiholo(1), Scalar::gaussian(1, 2));
        assert_eq!(f.conj(&b).conj(&b), f);
        // conj(ω^1∧ω̄^2) = ω̄^1∧ω^2 = -ω^2∧ω̄^1
        let g = Form::monomial(b.holo(0) | b.antiholo(1), Scalar::ONE).conj(&b);
        assert_eq!(g.coefficient(b.holo(1) | b.antiholo(0)), Scalar::from_int(-1));
    }
}
