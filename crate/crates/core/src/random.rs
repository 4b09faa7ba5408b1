//! Seeded generators: unimodular basis changes, scrambled direct sums and
//! random complexes with known decompositions.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so every
//! output is a deterministic function of its arguments.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shapes::{enumerate_shapes, make_indecomposable, Indecomposable, MultiplicityTable};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const MULTIPLIERS: [(i64, i64); 8] = [(1, 0), (-1, 0), (2, 0), (-2, 0), (0, 1), (0, -1), (1, 1), (1, -1)];

/// Product of elementary operations with small Gaussian-integer multipliers.
/// The determinant is `±1`, so the inverse stays integral.
pub fn random_unimodular(d: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::identity(d);
    if d < 2 {
        if d == 1 && rng.gen_bool(0.5) {
            m[(0, 0)] = Scalar::from_int(-1);
        }
        return m;
    }
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen_ratio(1, 5) {
            for c in 0..d {
                let tmp = m[(i, c)].clone();
                m[(i, c)] = m[(j, c)].clone();
                m[(j, c)] = tmp;
            }
        } else {
            let (re, im) = MULTIPLIERS[rng.gen_range(0..MULTIPLIERS.len())];
            let k = Scalar::gaussian(re, im);
            for c in 0..d {
                let add = &k * &m[(j, c)];
                m[(i, c)] += &add;
            }
        }
    }
    m
}

/// Direct sum of `items` in `n` dimensions, then a random bigraded change of basis.
pub fn scrambled_sum(n: usize, items: &[Indecomposable], seed: u64) -> Result<(DoubleComplex, MultiplicityTable)> {
    let mut rng = rng(seed);
    let mut order: Vec<&Indecomposable> = items.iter().collect();
    order.shuffle(&mut rng);
    let mut sum = DoubleComplex::zero(n);
    for item in order {
        sum = sum.direct_sum(&make_indecomposable(item, n)?)?;
    }
    let bases: Vec<Matrix> = sum.bidegrees().map(|b| random_unimodular(sum.dim_at(b), &mut rng)).collect();
    Ok((sum.change_basis(&bases)?, MultiplicityTable::from_items(items)))
}

/// Every indecomposable fitting in `[0,n]²`: zigzags first, then squares.
pub fn all_indecomposables(n: usize) -> Vec<Indecomposable> {
    let mut out: Vec<Indecomposable> = enumerate_shapes(n).into_iter().map(Indecomposable::Zigzag).collect();
    for c in 0..n {
        for d in 0..n {
            out.push(Indecomposable::Square(Bidegree::new(c, d)));
        }
    }
    out
}

fn footprint(item: &Indecomposable) -> Vec<Bidegree> {
    match item {
        Indecomposable::Zigzag(z) => z.dots().to_vec(),
        Indecomposable::Square(c) => alloc::vec![
            *c,
            Bidegree::new(c.p + 1, c.q),
            Bidegree::new(c.p, c.q + 1),
            Bidegree::new(c.p + 1, c.q + 1),
        ],
    }
}

/// A random multiset of indecomposables with every component of dimension at most `max_dim`.
pub fn random_items(n: usize, max_dim: usize, rng: &mut impl Rng) -> Vec<Indecomposable> {
    let pool = all_indecomposables(n);
    let side = n + 1;
    let mut load = alloc::vec![0usize; side * side];
    let mut out = Vec::new();
    let attempts = rng.gen_range(1..=2 * side * side);
    for _ in 0..attempts {
        let item = &pool[rng.gen_range(0..pool.len())];
        let cells = footprint(item);
        if cells.iter().all(|b| load[b.p * side + b.q] < max_dim) {
            for b in &cells {
                load[b.p * side + b.q] += 1;
            }
            out.push(item.clone());
        }
    }
    out
}

/// A random valid complex with components of dimension at most `max_dim`.
pub fn random_complex(n: usize, max_dim: usize, seed: u64) -> DoubleComplex {
    let mut r = rng(seed ^ 0x5eed_0fc0_4d1e);
    let items = random_items(n, max_dim, &mut r);
    scrambled_sum(n, &items, seed).expect("random items fit").0
}

/// Orbit of an indecomposable under `τ: (p,q) ↦ (q,p)` and `σ: (p,q) ↦ (n-p,n-q)`.
pub fn symmetry_orbit(item: &Indecomposable, n: usize) -> Vec<Indecomposable> {
    let tau = |x: &Indecomposable| match x {
        Indecomposable::Zigzag(z) => Indecomposable::Zigzag(z.swapped()),
        Indecomposable::Square(c) => Indecomposable::Square(c.swapped()),
    };
    let sigma = |x: &Indecomposable| match x {
        Indecomposable::Zigzag(z) => Indecomposable::Zigzag(z.reflected(n)),
        Indecomposable::Square(c) => Indecomposable::Square(Bidegree::new(n - 1 - c.p, n - 1 - c.q)),
    };
    let mut out = alloc::vec![item.clone(), tau(item), sigma(item), sigma(&tau(item))];
    out.sort();
    out.dedup();
    out
}

/// Shapes allowed in manifold-like sums: a zigzag may touch a corner of
/// `[0,n]²` only if it is the single dot there. On a compact connected
/// manifold `(0,0)` and `(n,n)` carry only constants and volume forms, and
/// `∂` vanishes on holomorphic `(n-1,0)`-forms by Stokes, which rules out
/// every other shape whose `τ`/`σ` orbit reaches `(n,0)` or `(0,n)`.
pub fn manifold_like(item: &Indecomposable, n: usize) -> bool {
    match item {
        Indecomposable::Square(_) => true,
        Indecomposable::Zigzag(z) => {
            let corners = [(0, 0), (n, n), (n, 0), (0, n)];
            z.len() == 1 || !corners.iter().any(|&(p, q)| z.contains(Bidegree::new(p, q)))
        }
    }
}

/// A random multiset closed under `τ` and `σ`, built from manifold-like shapes,
/// containing the dots at `(0,0)` and `(n,n)` exactly once.
pub fn symmetric_items(n: usize, orbits: usize, rng: &mut impl Rng) -> Vec<Indecomposable> {
    let corner = |p| Indecomposable::Zigzag(crate::shapes::ZigzagShape::dot(p, p));
    let pool: Vec<Indecomposable> = all_indecomposables(n)
        .into_iter()
        .filter(|x| manifold_like(x, n) && *x != corner(0) && *x != corner(n))
        .collect();
    let mut out = alloc::vec![corner(0)];
    if n > 0 {
        out.push(corner(n));
    }
    for _ in 0..orbits {
        let pick = &pool[rng.gen_range(0..pool.len())];
        out.extend(symmetry_orbit(pick, n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_is_invertible() {
        let mut r = rng(1);
        for d in 0..6 {
            let m = random_unimodular(d, &mut r);
            let inv = m.inverse().expect("invertible");
            assert_eq!(m.mul(&inv), Matrix::identity(d));
        }
    }

    #[test]
    fn scrambled_sums_are_valid_and_deterministic() {
        let items = all_indecomposables(2);
        let (a, t) = scrambled_sum(2, &items, 9).unwrap();
        assert!(a.is_valid());
        assert!(t.accounting_failures(&a).is_empty());
        assert_eq!(scrambled_sum(2, &items, 9).unwrap().0, a);
        assert_eq!(scrambled_sum(1, &[], 3).unwrap().0, DoubleComplex::zero(1));
    }

    #[test]
    fn random_complexes_respect_bound() {
        for seed in 0..10 {
            let a = random_complex(3, 3, seed);
            assert!(a.is_valid());
            assert!(a.bidegrees().all(|b| a.dim_at(b) <= 3));
        }
    }

    #[test]
    fn symmetric_items_are_closed() {
        let mut r = rng(4);
        let items = symmetric_items(3, 4, &mut r);
        let t = MultiplicityTable::from_items(&items);
        assert_eq!(t.reflected(3), t);
        for (z, m) in &t.zigzags {
            assert_eq!(t.zigzags.get(&z.swapped()), Some(m));
        }
    }
}
