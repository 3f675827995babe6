//! Planar orthogonal polynomials for the weight |z−a|^{2c} e^{−N|z|²}.
//!
//! The crate generates the monic orthogonal polynomials through a Lax-pair
//! coefficient recurrence, finds their zeros in extended precision, builds the
//! limiting skeleton, its measure and the γ-family of droplets, and checks the
//! strong asymptotic formulas against the generated polynomials.
//!
//! Modules, bottom up:
//! - [`mpnum`]: extended-precision kernel, gamma, parabolic cylinder and Hankel functions.
//! - [`geometry`]: skeleton 𝒮, measure μ, φ_A, η-curves, zero-attraction curves.
//! - [`gammafam`]: the γ > 0 droplets K_γ, skeletons 𝒮_γ and φ_γ.
//! - [`lax`]: coefficient recurrence and polynomial synthesis.
//! - [`oracle`]: moments and Gram–Schmidt ground truth.
//! - [`zeros`]: Aberth–Ehrlich root finding and zero statistics.
//! - [`asym`]: region-aware strong asymptotics and order fits.

// `!(x > y)` is used on purpose so that NaN lands in the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asym;
pub mod csv;
pub mod error;
pub mod gammafam;
pub mod geometry;
pub mod lax;
pub mod mpnum;
pub mod oracle;
pub mod zeros;

pub use error::{Error, ErrorKind, Result};
pub use geometry::{CurveMeasure, PlanarCurve, ProblemParams, Side};

pub use lax::{CoeffState, InitMode, ScaledPolynomial};
pub use mpnum::{LogComplex, PrecisionContext};
pub use zeros::RootSet;
