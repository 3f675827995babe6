//! Extended-precision numeric kernel.
//!
//! Everything here runs on MPFR/MPC floats through `rug`. Functions take an
//! immutable [`PrecisionContext`] and are safe to call from many threads.

mod gamma;
mod hankel;
mod logc;
mod quad;
mod weber;

pub use gamma::{gamma, log_gamma, pochhammer, rgamma};
pub use hankel::{fhat, hankel_ck, hankel_moment};
pub use logc::LogComplex;
pub use quad::{contour_quadrature, contour_quadrature_tol, Circle, ClosedContour};
pub use weber::{weber_connection_residuals, weber_d, weber_d_asymptotic, WeberAsymptotic};

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Real = Float;
pub type Cplx = Complex;

/// Working precision and default quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub mantissa_bits: u32,
    pub quadrature_nodes: usize,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            mantissa_bits: 256,
            quadrature_nodes: 512,
        }
    }
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;

    pub fn new(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < Self::MIN_BITS {
            return Err(Error::Precision(format!(
                "mantissa_bits = {mantissa_bits} is below the floor of {}",
                Self::MIN_BITS
            )));
        }
        Ok(PrecisionContext {
            mantissa_bits,
            ..Default::default()
        })
    }

    pub fn with_bits(self, mantissa_bits: u32) -> Self {
        PrecisionContext {
            mantissa_bits: mantissa_bits.max(Self::MIN_BITS),
            ..self
        }
    }

    pub fn with_nodes(self, quadrature_nodes: usize) -> Self {
        PrecisionContext {
            quadrature_nodes: quadrature_nodes.max(8),
            ..self
        }
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn real(&self, x: f64) -> Float {
        Float::with_val(self.mantissa_bits, x)
    }

    pub fn cplx(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.mantissa_bits, (re, im))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.mantissa_bits, Constant::Pi)
    }

    /// Relative rounding slack 2^{−bits+8}.
    pub fn slack(&self) -> Float {
        Float::with_val(self.mantissa_bits, 1u32) >> (self.mantissa_bits as i32 - 8)
    }

    /// Convergence target 2^{−(bits−16)} used by iterative kernels.
    pub fn tolerance(&self) -> Float {
        Float::with_val(self.mantissa_bits, 1u32) >> (self.mantissa_bits as i32 - 16)
    }
}

pub fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

pub fn from_c64(prec: u32, z: Complex64) -> Complex {
    Complex::with_val(prec, (z.re, z.im))
}

pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn carg(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.arg_ref())
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// e^{iθ} at the requested precision.
pub(crate) fn expi(prec: u32, theta: &Float) -> Complex {
    let mut s = Float::with_val(prec, theta);
    let mut c = Float::new(prec);
    s.sin_cos_mut(&mut c);
    Complex::with_val(prec, (c, s))
}
