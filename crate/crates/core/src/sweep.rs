//! Semicontinuity checks along a one-parameter family of structure equations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::invariants::{aeppli_direct, bott_chern_direct, de_rham, frolicher, Grid, Orientation};
use crate::lie::{lie_model, LieModel};
use crate::scalar::Scalar;
use crate::schweitzer::s_dims;

/// Invariants of the family member at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub t: Scalar,
    /// `s^k_{p,q}` keyed by `(p, q, k)` for `(p,q) ∈ [0,n+1]²`, `k ∈ [-1,2n]`.
    pub s: BTreeMap<(i64, i64, i32), usize>,
    pub h_bc: Grid,
    pub h_a: Grid,
    pub betti: Vec<usize>,
    pub fd01: usize,
    /// `FD^{0,n-1}`.
    pub fd0n1: usize,
}

impl FamilyPoint {
    pub fn evaluate(model: &LieModel, t: &Scalar) -> Result<Self> {
        let a = lie_model(model, t)?.into_complex();
        let n = a.n() as i64;
        let mut s = BTreeMap::new();
        for p in 0..=n + 1 {
            for q in 0..=n + 1 {
                for (k, d) in s_dims(&a, p, q)? {
                    s.insert((p, q, k), d);
                }
            }
        }
        let f = frolicher(&a, Orientation::Column)?;
        let fd = |p: usize, q: usize| f.page(1).dims[p][q] - f.e_infinity()[p][q];
        let last = a.n().saturating_sub(1);
        Ok(FamilyPoint {
            t: t.clone(),
            s,
            h_bc: bott_chern_direct(&a)?,
            h_a: aeppli_direct(&a)?,
            betti: de_rham(&a)?,
            fd01: if a.n() >= 1 { fd(0, 1) } else { 0 },
            fd0n1: fd(0, last),
        })
    }
}

/// A comparison against the `t = 0` value that went the wrong way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub t: Scalar,
    pub quantity: String,
    pub at_zero: usize,
    pub at_t: usize,
}

/// A strict decrease `value(t) < value(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drop {
    pub t: Scalar,
    pub quantity: String,
    pub at_zero: usize,
    pub at_t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub points: Vec<FamilyPoint>,
    pub violations: Vec<Violation>,
    pub drops: Vec<Drop>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Collector<'a> {
    t: &'a Scalar,
    violations: Vec<Violation>,
    drops: Vec<Drop>,
}

impl Collector<'_> {
    /// Upper semicontinuity: `value(t) ≤ value(0)`.
    fn at_most(&mut self, quantity: String, at_zero: usize, at_t: usize) {
        if at_t > at_zero {
            self.violations.push(Violation { t: self.t.clone(), quantity, at_zero, at_t });
        } else if at_t < at_zero {
            self.drops.push(Drop { t: self.t.clone(), quantity, at_zero, at_t });
        }
    }

    fn equal(&mut self, quantity: String, at_zero: usize, at_t: usize) {
        if at_t != at_zero {
            self.violations.push(Violation { t: self.t.clone(), quantity, at_zero, at_t });
        }
    }
}

/// Evaluates `model` at each `t` and compares against `t = 0`, which must be listed.
pub fn semicontinuity_sweep(model: &LieModel, t_values: &[Scalar]) -> Result<SweepReport> {
    if !t_values.iter().any(Scalar::is_zero) {
        return Err(Error::MissingBasePoint);
    }
    let points = t_values.iter().map(|t| FamilyPoint::evaluate(model, t)).collect::<Result<Vec<_>>>()?;
    let base = points.iter().find(|p| p.t.is_zero()).expect("zero listed").clone();
    let n = model.n;
    let mut violations = Vec::new();
    let mut drops = Vec::new();
    for pt in points.iter().filter(|p| !p.t.is_zero()) {
        let mut c = Collector { t: &pt.t, violations: Vec::new(), drops: Vec::new() };
        for (key, &v0) in &base.s {
            let (p, q, k) = *key;
            c.at_most(format!("s^{k}_({p},{q})"), v0, pt.s.get(key).copied().unwrap_or(0));
        }
        for p in 0..=n {
            for q in 0..=n {
                c.at_most(format!("h_BC^({p},{q})"), base.h_bc[p][q], pt.h_bc[p][q]);
            }
        }
        for (k, (&b0, &bt)) in base.betti.iter().zip(&pt.betti).enumerate() {
            c.equal(format!("b_{k}"), b0, bt);
        }
        c.at_most(String::from("FD^(0,1)"), base.fd01, pt.fd01);
        c.at_most(format!("FD^(0,{})", n.saturating_sub(1)), base.fd0n1, pt.fd0n1);
        violations.extend(c.violations);
        drops.extend(c.drops);
    }
    Ok(SweepReport { n, points, violations, drops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn constant_family_has_no_drops() {
        let r = semicontinuity_sweep(&builtin::torus(2), &[Scalar::ZERO, Scalar::ratio(1, 3)]).unwrap();
        assert!(r.passed());
        assert!(r.drops.is_empty());
    }

    #[test]
    fn zero_is_required() {
        assert!(matches!(
            semicontinuity_sweep(&builtin::torus(1), &[Scalar::ONE]),
            Err(Error::MissingBasePoint)
        ));
    }
}
