use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed scalar `{0}`")]
    Scalar(String),
    #[error("malformed polynomial `{0}`")]
    Poly(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("bidegree ({0},{1}) lies outside [0,{2}]^2")]
    OutOfBounds(i64, i64, usize),

    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("not a double complex: {0}")]
    InvalidComplex(String),

    #[error("invalid zigzag shape: {0}")]
    InvalidShape(String),

    #[error("structure equations are not flat at t = {t}: d^2 != 0 on generator {generator}")]
    NotFlat { t: String, generator: String },

    #[error("structure equations are not integrable at t = {t}: d(omega^{index}) has a (0,2)-part")]
    NonIntegrable { t: String, index: usize },

    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),

    #[error("grid is not symmetric under (r,s) -> (n-s,n-r) at ({0},{1})")]
    AsymmetricGrid(usize, usize),

    #[error("calibration matrix for n = {n} has rank {rank} < {shapes}")]
    CalibrationRankDeficient { n: usize, rank: usize, shapes: usize },

    #[error("multiplicity extraction failed: {0}")]
    Decomposition(String),

    #[error("parameter values must include t = 0")]
    MissingBasePoint,

    #[error("pairing does not descend to cohomology at (p,q,k) = ({p},{q},{k})")]
    PairingDescent { p: i32, q: i32, k: i32 },
}

pub type Result<T> = core::result::Result<T, Error>;
