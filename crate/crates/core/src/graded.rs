//! Singly graded complexes whose spaces are direct sums of bidegree-tagged blocks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bicomplex::Bidegree;
use crate::matrix::Matrix;

/// One block of a graded space: the copy of `A^{tag}` it came from and its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub tag: Bidegree,
    pub dim: usize,
}

/// `C^lo → C^{lo+1} → … → C^hi` with `diff[k - lo] : C^k → C^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    lo: i32,
    spaces: Vec<Vec<Summand>>,
    diff: Vec<Matrix>,
}

impl GradedComplex {
    /// Assembles a complex. `diff[i]` maps degree `lo+i` to `lo+i+1`; the last
    /// entry must map into the zero space. Panics if shapes disagree.
    pub fn new(lo: i32, spaces: Vec<Vec<Summand>>, diff: Vec<Matrix>) -> Self {
        assert_eq!(spaces.len(), diff.len(), "one differential per degree");
        let dims: Vec<usize> = spaces.iter().map(|s| s.iter().map(|x| x.dim).sum()).collect();
        for (i, d) in diff.iter().enumerate() {
            let target = dims.get(i + 1).copied().unwrap_or(0);
            assert_eq!(d.shape(), (target, dims[i]), "differential shape in degree {}", lo + i as i32);
        }
        GradedComplex { lo, spaces, diff }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.spaces.len() as i32 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    fn slot(&self, k: i32) -> Option<usize> {
        (k >= self.lo && k <= self.hi()).then(|| (k - self.lo) as usize)
    }

    /// Tagged summands of `C^k` (empty outside the stored range).
    pub fn summands(&self, k: i32) -> &[Summand] {
        self.slot(k).map(|i| self.spaces[i].as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, k: i32) -> usize {
        self.summands(k).iter().map(|s| s.dim).sum()
    }

    /// Offset of the block tagged `tag` inside `C^k`.
    pub fn offset(&self, k: i32, tag: Bidegree) -> Option<usize> {
        let mut off = 0;
        for s in self.summands(k) {
            if s.tag == tag {
                return Some(off);
            }
            off += s.dim;
        }
        None
    }

    /// `d^k : C^k → C^{k+1}`; a correctly shaped zero matrix outside the range.
    pub fn diff(&self, k: i32) -> Matrix {
        match self.slot(k) {
            Some(i) => self.diff[i].clone(),
            None => Matrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn diff_ref(&self, k: i32) -> Option<&Matrix> {
        self.slot(k).map(|i| &self.diff[i])
    }

    fn rank_at(&self, k: i32) -> usize {
        self.diff_ref(k).map(Matrix::rank).unwrap_or(0)
    }

    /// Degrees where `d^{k+1} ∘ d^k ≠ 0`.
    pub fn square_zero_failures(&self) -> Vec<i32> {
        self.degrees()
            .filter(|&k| match (self.diff_ref(k), self.diff_ref(k + 1)) {
                (Some(a), Some(b)) => !b.mul(a).is_zero(),
                _ => false,
            })
            .collect()
    }

    /// `dim H^k` for every degree in range.
    pub fn cohomology(&self) -> BTreeMap<i32, usize> {
        let ranks: Vec<usize> = self.degrees().map(|k| self.rank_at(k)).collect();
        self.degrees()
            .enumerate()
            .map(|(i, k)| {
                let incoming = if i == 0 { 0 } else { ranks[i - 1] };
                (k, self.dim(k) - ranks[i] - incoming)
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees().all(|k| self.dim(k) == 0)
    }
}

/// Alternating sum of a cohomology table.
pub fn alternating_sum(table: &BTreeMap<i32, usize>) -> i64 {
    table
        .iter()
        .map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_term_isomorphism_is_acyclic() {
        let t = Bidegree::new(0, 0);
        let u = Bidegree::new(1, 0);
        let c = GradedComplex::new(
            0,
            vec![vec![Summand { tag: t, dim: 1 }], vec![Summand { tag: u, dim: 1 }]],
            vec![Matrix::identity(1), Matrix::zeros(0, 1)],
        );
        assert!(c.cohomology().values().all(|&d| d == 0));
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.offset(1, u), Some(0));
        assert!(c.square_zero_failures().is_empty());
    }
}
