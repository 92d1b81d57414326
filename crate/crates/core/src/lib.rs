//! Harmonic analysis on SU(2) and SU(3) by wrapping Euclidean analysis
//! around the exponential map.
//!
//! The crate revolves around one central construction: an Ad-invariant
//! function on the Lie algebra determines a central function on the group,
//! and the transfer can be computed four ways — as a lattice sum, as a
//! lattice sum against the exponential Jacobian factor, as a character
//! series with shifted Fourier coefficients, and as a character series with
//! orbit-averaged coefficients. Keeping those four in numerical agreement
//! pins every measure and transform constant, and the remaining modules
//! (multiplier transfer, Lp-norm experiments, polyhedral partial sums)
//! build on that agreement.
//!
//! Module map:
//! - [`rootdata`]: root systems, Weyl groups, weight and unit lattices.
//! - [`special`]: the exponential Jacobian factor `j`, Weyl denominator,
//!   characters, and orbital integrals.
//! - [`wrap`]: Fourier transforms of Ad-invariant functions and the
//!   transfer to central functions, in all four forms.
//! - [`multiplier`]: scalar Fourier multipliers and their two transferred
//!   forms on the dominant weights.
//! - [`norms`]: Lp norms on the algebra and the group plus the inequality
//!   verification harness.
//! - [`fourier_sums`]: Weyl-invariant polyhedral partial sums and
//!   convergence experiments.
//!
//! Heavy inner loops (coefficients across weights, quadrature panels,
//! norm families) run on rayon when the default `parallel` feature is
//! enabled and fall back to sequential execution without it; reductions
//! are index-ordered either way, so outputs are identical.

pub mod error;
pub mod exec;
pub mod fourier_sums;
pub mod geom;
pub mod multiplier;
pub mod norms;
pub mod orbit;
pub mod quad;
pub mod rootdata;
pub mod special;
pub mod wrap;

pub use error::Error;
pub use quad::QuadSpec;
pub use rootdata::{DominantWeight, GroupId, RootSystem};

pub type Result<T> = std::result::Result<T, Error>;
