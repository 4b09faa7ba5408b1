//! Named example models.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bicomplex::DoubleComplex;
use crate::error::{Error, Result};
use crate::lie::{lie_model, LieModel, Poly};
use crate::scalar::Scalar;
use crate::shapes::make_dot;

/// A built-in: either a structure-equation model or a bare double complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Lie(LieModel),
    Complex(DoubleComplex),
}

impl Builtin {
    /// The double complex, evaluating a Lie model at `t = 0`.
    pub fn complex(&self) -> Result<DoubleComplex> {
        match self {
            Builtin::Lie(m) => Ok(lie_model(m, &Scalar::ZERO)?.into_complex()),
            Builtin::Complex(c) => Ok(c.clone()),
        }
    }

    pub fn lie(&self) -> Option<&LieModel> {
        match self {
            Builtin::Lie(m) => Some(m),
            Builtin::Complex(_) => None,
        }
    }
}

fn c(x: i64) -> Poly {
    Poly::constant(Scalar::from_int(x))
}

pub fn torus(n: usize) -> LieModel {
    LieModel::abelian(n)
}

/// `dω^1 = dω^2 = 0`, `dω^3 = -ω^1∧ω^2`.
pub fn iwasawa() -> LieModel {
    LieModel::abelian(3).with20(3, 1, 2, c(-1))
}

/// `dω^1 = 0`, `dω^2 = ω^1∧ω̄^1`.
pub fn kodaira_thurston() -> LieModel {
    LieModel::abelian(2).with11(2, 1, 1, c(1))
}

/// `dot(0,0) ⊕ dot(1,1)` in `n = 1`.
pub fn p1_synthetic() -> DoubleComplex {
    make_dot(0, 0, 1)
        .and_then(|a| a.direct_sum(&make_dot(1, 1, 1)?))
        .expect("dots fit in n = 1")
}

/// A one-parameter family through the Iwasawa model:
/// `dω^1 = dω^2 = 0`, `dω^3 = -ω^1∧ω^2 + t·ω^1∧ω̄^1`.
///
/// This is the first-order part of Nakamura's class (ii) small deformations
/// of the Iwasawa manifold, in the direction of the single parameter
/// `t_{11}` (the coefficient of `ω^1∧ω̄^1` in the structure equation of the
/// deformed third coframe element; see I. Nakamura, "Complex parallelisable
/// manifolds and their small deformations", J. Differential Geom. 10 (1975),
/// and D. Angella, "The cohomologies of the Iwasawa manifold and of its small
/// deformations", J. Geom. Anal. 23 (2013), table of structure equations).
/// The exact Kuranishi coefficients are non-polynomial in `t`; their linear
/// terms are kept, which is still flat and integrable for every `t`.
pub fn iwasawa_family() -> LieModel {
    LieModel::abelian(3).with20(3, 1, 2, c(-1)).with11(3, 1, 1, Poly::t())
}

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    ["torus(n)", "iwasawa", "kodaira_thurston", "p1_synthetic", "iwasawa_family"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Looks up a model by name; `torus(n)` takes its dimension in parentheses.
pub fn builtin(name: &str) -> Result<Builtin> {
    let name = name.trim();
    match name {
        "iwasawa" => return Ok(Builtin::Lie(iwasawa())),
        "kodaira_thurston" => return Ok(Builtin::Lie(kodaira_thurston())),
        "p1_synthetic" => return Ok(Builtin::Complex(p1_synthetic())),
        "iwasawa_family" => return Ok(Builtin::Lie(iwasawa_family())),
        _ => {}
    }
    if let Some(arg) = name.strip_prefix("torus(").and_then(|r| r.strip_suffix(')')) {
        if let Ok(n) = arg.trim().parse::<usize>() {
            if (1..=6).contains(&n) {
                return Ok(Builtin::Lie(torus(n)));
            }
        }
    }
    Err(Error::UnknownBuiltin(format!("{name} (known: {})", builtin_names().join(", "))))
}
