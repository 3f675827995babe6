//! The γ = 0 potential-theoretic objects.
//!
//! Curves and measures are computed in `f64`: they feed distance statistics
//! and plots that need ~1e−12, not the extended precision of the polynomials.

mod curve;
mod trace;

pub use curve::{hausdorff, CurveMeasure, PlanarCurve, PointClass, Projection};
pub use trace::{
    attraction_rhs, default_d_beta_radius, eta_curve, mu_on_skeleton, skeleton_radius, trace_skeleton,
    zero_attraction_curve,
};

use num_complex::Complex64;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The problem constants a, c, N with the derived β = min(a, 1/a) and
/// ℓ = log β − aβ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub a: f64,
    pub c: f64,
    #[serde(rename = "N")]
    pub big_n: f64,
    pub beta: f64,
    pub ell: f64,
}

impl ProblemParams {
    pub fn new(a: f64, c: f64, big_n: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("a must be positive, got {a}")));
        }
        if !(c.is_finite() && c > -1.0) {
            return Err(Error::domain(format!("c must exceed −1, got {c}")));
        }
        if !(big_n.is_finite() && big_n > 0.0) {
            return Err(Error::domain(format!("N must be positive, got {big_n}")));
        }
        let beta = a.min(1.0 / a);
        let ell = beta.ln() - a * beta;
        Ok(ProblemParams { a, c, big_n, beta, ell })
    }

    /// Same a and c with N replaced.
    pub fn with_n(&self, big_n: f64) -> Result<Self> {
        Self::new(self.a, self.c, big_n)
    }

    pub fn outer_charge(&self) -> bool {
        self.a > 1.0
    }

    pub fn a_mp(&self, prec: u32) -> Float {
        Float::with_val(prec, self.a)
    }

    pub fn c_mp(&self, prec: u32) -> Float {
        Float::with_val(prec, self.c)
    }

    pub fn n_mp(&self, prec: u32) -> Float {
        Float::with_val(prec, self.big_n)
    }

    /// β at the requested precision, from a rather than from the rounded f64 β.
    pub fn beta_mp(&self, prec: u32) -> Float {
        let a = self.a_mp(prec);
        if self.a > 1.0 {
            a.recip()
        } else {
            a
        }
    }

    pub fn ell_mp(&self, prec: u32) -> Float {
        let b = self.beta_mp(prec);
        let ab = Float::with_val(prec, &b * self.a_mp(prec));
        b.ln() - ab
    }
}

/// Which branch of a piecewise function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Ext,
    Int,
}

/// φ_A(z) = a(z−β) − log(z/β), principal log.
pub fn phi_a(params: &ProblemParams, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singularity("φ_A has a logarithmic singularity at 0".into()));
    }
    Ok(params.a * (z - params.beta) - (z / params.beta).ln())
}

/// φ_A′(z) = a − 1/z.
pub fn phi_a_prime(params: &ProblemParams, z: Complex64) -> Complex64 {
    params.a - 1.0 / z
}

/// g(z): log z on the exterior of 𝒮, az + ℓ inside.
pub fn g_function(params: &ProblemParams, z: Complex64, side: Side) -> Result<Complex64> {
    match side {
        Side::Ext => {
            if z == Complex64::new(0.0, 0.0) {
                return Err(Error::Singularity("log z at 0".into()));
            }
            Ok(z.ln())
        }
        Side::Int => Ok(params.a * z + params.ell),
    }
}
