//! Indecomposable double complexes: dots, squares and zigzags.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowKind {
    Del,
    Delbar,
}

impl ArrowKind {
    fn step(self) -> (usize, usize) {
        match self {
            ArrowKind::Del => (1, 0),
            ArrowKind::Delbar => (0, 1),
        }
    }

    fn other(self) -> Self {
        match self {
            ArrowKind::Del => ArrowKind::Delbar,
            ArrowKind::Delbar => ArrowKind::Del,
        }
    }
}

/// Arrow between consecutive dots of a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub kind: ArrowKind,
    /// True if the arrow points from `dots[i]` to `dots[i+1]`.
    pub forward: bool,
}

/// A zigzag: one-dimensional components at `dots`, joined by alternating `∂`/`∂̄`
/// arrows, on two adjacent total degrees. Always held in canonical orientation
/// (lexicographically smaller endpoint first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZigzagShape {
    dots: Vec<Bidegree>,
    arrows: Vec<Arrow>,
}

fn arrow_between(a: Bidegree, b: Bidegree) -> Option<Arrow> {
    let (dp, dq) = (b.p as i64 - a.p as i64, b.q as i64 - a.q as i64);
    match (dp, dq) {
        (1, 0) => Some(Arrow { kind: ArrowKind::Del, forward: true }),
        (-1, 0) => Some(Arrow { kind: ArrowKind::Del, forward: false }),
        (0, 1) => Some(Arrow { kind: ArrowKind::Delbar, forward: true }),
        (0, -1) => Some(Arrow { kind: ArrowKind::Delbar, forward: false }),
        _ => None,
    }
}

impl ZigzagShape {
    /// Validates an explicit dot/arrow description and canonicalises it.
    pub fn new(dots: Vec<Bidegree>, arrows: Vec<Arrow>) -> Result<Self> {
        let derived = Self::from_dots(dots.clone())?;
        let given = ZigzagShape { dots, arrows }.canonical();
        if given.arrows != derived.arrows {
            return Err(Error::InvalidShape(String::from("arrows do not match dot positions")));
        }
        Ok(derived)
    }

    /// Derives the arrows from the dot sequence.
    pub fn from_dots(dots: Vec<Bidegree>) -> Result<Self> {
        let bad = |m: &str| Error::InvalidShape(format!("{m}: {dots:?}"));
        if dots.is_empty() {
            return Err(bad("no dots"));
        }
        let mut arrows = Vec::with_capacity(dots.len() - 1);
        for w in dots.windows(2) {
            arrows.push(arrow_between(w[0], w[1]).ok_or_else(|| bad("non-adjacent dots"))?);
        }
        for w in arrows.windows(2) {
            if w[0].kind == w[1].kind {
                return Err(bad("arrow types do not alternate"));
            }
            if w[0].forward == w[1].forward {
                return Err(bad("dots do not alternate between two total degrees"));
            }
        }
        let distinct: BTreeSet<Bidegree> = dots.iter().copied().collect();
        if distinct.len() != dots.len() {
            return Err(bad("repeated dot"));
        }
        Ok(ZigzagShape { dots, arrows }.canonical())
    }

    fn canonical(self) -> Self {
        if self.dots.last() < self.dots.first() {
            let dots: Vec<Bidegree> = self.dots.into_iter().rev().collect();
            let arrows = self
                .arrows
                .into_iter()
                .rev()
                .map(|a| Arrow { kind: a.kind, forward: !a.forward })
                .collect();
            ZigzagShape { dots, arrows }
        } else {
            self
        }
    }

    pub fn dot(p: usize, q: usize) -> Self {
        ZigzagShape { dots: alloc::vec![Bidegree::new(p, q)], arrows: Vec::new() }
    }

    pub fn dots(&self) -> &[Bidegree] {
        &self.dots
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.dots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty()
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        self.dots.contains(&b)
    }

    /// The lowest total degree touched.
    pub fn low_degree(&self) -> usize {
        self.dots.iter().map(|d| d.total()).min().unwrap_or(0)
    }

    pub fn fits(&self, n: usize) -> bool {
        self.dots.iter().all(|d| d.p <= n && d.q <= n)
    }

    /// Image under `(p,q) ↦ (q,p)` with `∂ ↔ ∂̄`.
    pub fn swapped(&self) -> Self {
        Self::from_dots(self.dots.iter().map(|d| d.swapped()).collect()).expect("swap preserves shapes")
    }

    /// Image under the duality `(p,q) ↦ (n-p,n-q)` (arrows reverse).
    pub fn reflected(&self, n: usize) -> Self {
        Self::from_dots(self.dots.iter().map(|d| d.reflected(n)).collect())
            .expect("reflection preserves shapes")
    }
}

impl fmt::Display for ZigzagShape {
    /// E.g. `(0,1) <-∂̄- (0,0) -∂-> (1,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dots[0])?;
        for (a, d) in self.arrows.iter().zip(&self.dots[1..]) {
            let sym = match a.kind {
                ArrowKind::Del => "∂",
                ArrowKind::Delbar => "∂̄",
            };
            if a.forward {
                write!(f, " -{sym}-> {d}")?;
            } else {
                write!(f, " <-{sym}- {d}")?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for ZigzagShape {
    type Err = Error;

    /// Parses the [`fmt::Display`] form; only the dot positions are significant.
    fn from_str(s: &str) -> Result<Self> {
        let mut dots = Vec::new();
        let mut rest = s;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::InvalidShape(format!("unbalanced `{s}`")))?;
            let inner = &rest[open + 1..open + close];
            let (p, q) = inner
                .split_once(',')
                .ok_or_else(|| Error::InvalidShape(format!("bad dot `{inner}`")))?;
            let parse = |x: &str| {
                x.trim().parse::<usize>().map_err(|_| Error::InvalidShape(format!("bad dot `{inner}`")))
            };
            dots.push(Bidegree::new(parse(p)?, parse(q)?));
            rest = &rest[open + close + 1..];
        }
        ZigzagShape::from_dots(dots)
    }
}

/// An indecomposable summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indecomposable {
    Zigzag(ZigzagShape),
    /// Square with lower-left corner at the given bidegree.
    Square(Bidegree),
}

/// Multiplicities of indecomposable summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub zigzags: BTreeMap<ZigzagShape, usize>,
    pub squares: BTreeMap<Bidegree, usize>,
}

impl MultiplicityTable {
    pub fn add(&mut self, item: &Indecomposable, count: usize) {
        if count == 0 {
            return;
        }
        match item {
            Indecomposable::Zigzag(z) => *self.zigzags.entry(z.clone()).or_default() += count,
            Indecomposable::Square(c) => *self.squares.entry(*c).or_default() += count,
        }
    }

    pub fn from_items<'a>(items: impl IntoIterator<Item = &'a Indecomposable>) -> Self {
        let mut t = MultiplicityTable::default();
        for i in items {
            t.add(i, 1);
        }
        t
    }

    /// `Σ_Z mult(Z)·[dot of Z at b] + Σ_{squares covering b} mult`.
    pub fn accounted_dim(&self, b: Bidegree) -> usize {
        let z: usize = self.zigzags.iter().filter(|(s, _)| s.contains(b)).map(|(_, m)| m).sum();
        let s: usize = self
            .squares
            .iter()
            .filter(|(c, _)| (c.p == b.p || c.p + 1 == b.p) && (c.q == b.q || c.q + 1 == b.q))
            .map(|(_, m)| m)
            .sum();
        z + s
    }

    /// Bidegrees where the table does not account for `dim A^{p,q}`.
    pub fn accounting_failures(&self, a: &DoubleComplex) -> Vec<Bidegree> {
        a.bidegrees().filter(|&b| self.accounted_dim(b) != a.dim_at(b)).collect()
    }

    pub fn total_zigzags(&self) -> usize {
        self.zigzags.values().sum()
    }

    pub fn total_squares(&self) -> usize {
        self.squares.values().sum()
    }

    /// Transport along `(p,q) ↦ (n-p,n-q)`.
    pub fn reflected(&self, n: usize) -> Self {
        MultiplicityTable {
            zigzags: self.zigzags.iter().map(|(z, m)| (z.reflected(n), *m)).collect(),
            squares: self
                .squares
                .iter()
                .map(|(c, m)| (Bidegree::new(n - 1 - c.p, n - 1 - c.q), *m))
                .collect(),
        }
    }
}

fn check_fit(p: usize, q: usize, n: usize) -> Result<()> {
    if p <= n && q <= n {
        Ok(())
    } else {
        Err(Error::OutOfBounds(p as i64, q as i64, n))
    }
}

/// One-dimensional complex at `(p,q)`.
pub fn make_dot(p: usize, q: usize, n: usize) -> Result<DoubleComplex> {
    check_fit(p, q, n)?;
    Ok(DoubleComplex::with_dims(n, |a, b| usize::from(a == p && b == q)))
}

/// The square with corners `(p,q)…(p+1,q+1)`; the `∂̄` out of `(p+1,q)` carries the sign.
pub fn make_square(p: usize, q: usize, n: usize) -> Result<DoubleComplex> {
    check_fit(p + 1, q + 1, n)?;
    let mut c = DoubleComplex::with_dims(n, |a, b| {
        usize::from((a == p || a == p + 1) && (b == q || b == q + 1))
    });
    let one = Matrix::identity(1);
    c.set_del(p, q, one.clone())?;
    c.set_del(p, q + 1, one.clone())?;
    c.set_delbar(p, q, one)?;
    c.set_delbar(p + 1, q, Matrix::from_ints(1, 1, &[-1]))?;
    Ok(c)
}

/// One-dimensional component per dot, each arrow the scalar `1`.
pub fn make_zigzag(shape: &ZigzagShape, n: usize) -> Result<DoubleComplex> {
    for d in shape.dots() {
        check_fit(d.p, d.q, n)?;
    }
    let mut c = DoubleComplex::with_dims(n, |a, b| usize::from(shape.contains(Bidegree::new(a, b))));
    for (i, a) in shape.arrows().iter().enumerate() {
        let (src, _) = if a.forward {
            (shape.dots()[i], shape.dots()[i + 1])
        } else {
            (shape.dots()[i + 1], shape.dots()[i])
        };
        match a.kind {
            ArrowKind::Del => c.set_del(src.p, src.q, Matrix::identity(1))?,
            ArrowKind::Delbar => c.set_delbar(src.p, src.q, Matrix::identity(1))?,
        }
    }
    Ok(c)
}

pub fn make_indecomposable(item: &Indecomposable, n: usize) -> Result<DoubleComplex> {
    match item {
        Indecomposable::Zigzag(z) => make_zigzag(z, n),
        Indecomposable::Square(c) => make_square(c.p, c.q, n),
    }
}

/// Every zigzag shape with all dots in `[0,n]²`, each once, in sorted order.
///
/// Shapes are walked left to right: from a dot in the lower of the two total
/// degrees the next dot is reached by an outgoing `∂`, from a dot in the upper
/// degree by an incoming `∂̄`.
pub fn enumerate_shapes(n: usize) -> Vec<ZigzagShape> {
    let mut out = BTreeSet::new();
    for p in 0..=n {
        for q in 0..=n {
            out.insert(ZigzagShape::dot(p, q));
            for start_low in [true, false] {
                let mut dots = alloc::vec![Bidegree::new(p, q)];
                let mut low = start_low;
                let mut kind = if start_low { ArrowKind::Del } else { ArrowKind::Delbar };
                loop {
                    let cur = *dots.last().expect("nonempty");
                    let (dp, dq) = kind.step();
                    let next = if low {
                        Some(Bidegree::new(cur.p + dp, cur.q + dq))
                    } else if cur.p >= dp && cur.q >= dq {
                        Some(Bidegree::new(cur.p - dp, cur.q - dq))
                    } else {
                        None
                    };
                    match next {
                        Some(b) if b.p <= n && b.q <= n => dots.push(b),
                        _ => break,
                    }
                    out.insert(ZigzagShape::from_dots(dots.clone()).expect("walk yields shapes"));
                    low = !low;
                    kind = kind.other();
                }
            }
        }
    }
    out.into_iter().collect()
}
