//! Exact computations on bounded double complexes over the Gaussian rationals:
//! the Schweitzer complexes `L_{p,q}`, Bott-Chern/Aeppli/Dolbeault/de Rham
//! invariants, Frölicher spectral sequences, zigzag multiplicities and the
//! symbol complexes of `L_{p,q}`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bicomplex;
pub mod builtin;
pub mod error;
pub mod exterior;
pub mod graded;
pub mod invariants;
pub mod lie;
pub mod matrix;
pub mod random;
pub mod rational;
pub mod scalar;
pub mod schweitzer;
pub mod shapes;
pub mod subspace;
pub mod sweep;
pub mod symbol;
pub mod zigzag;

pub use bicomplex::{Bidegree, Diagnostics, DoubleComplex};
pub use error::{Error, ParseError, Result};
pub use graded::{GradedComplex, Summand};
pub use lie::{lie_model, LieComplex, LieModel, Poly};
pub use matrix::Matrix;
pub use rational::Rational;
pub use scalar::Scalar;
pub use shapes::{Indecomposable, MultiplicityTable, ZigzagShape};
pub use subspace::Subspace;
