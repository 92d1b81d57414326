//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group `{0}`; supported groups are su2 and su3")]
    UnsupportedGroup(String),

    #[error("weight with labels {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),

    #[error("quadrature did not converge: successive refinements gave {coarse:.12e} and {fine:.12e}")]
    QuadratureNoConverge { coarse: f64, fine: f64 },

    #[error("near-singular lattice point: |j(H + gamma)| = {j_value:.3e} at gamma = {gamma:?}")]
    NearSingularLatticePoint { gamma: Vec<f64>, j_value: f64 },

    #[error("operands live on different groups: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("multiplier support radius {support:.6} exceeds coefficient cutoff {cutoff:.6}")]
    CutoffMismatch { support: f64, cutoff: f64 },

    #[error("partial-sum index {index} out of range; family has {len} regions")]
    RegionIndexOutOfRange { index: usize, len: usize },

    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),

    #[error("unknown inequality id `{0}`; valid ids: {1}")]
    UnknownInequality(String, &'static str),

    #[error("exponent {0} not usable here: {1}")]
    BadExponent(f64, String),
}
