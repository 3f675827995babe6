//! Fixtures shared by the benchmarks.

use planarop::lax::{synthesize_last, InitMode};
use planarop::{PrecisionContext, ProblemParams, ScaledPolynomial};
use rug::{Complex, Float};

pub const A: f64 = std::f64::consts::SQRT_2;

/// P_n for a = √2, c = 1, N = n at `bits`.
pub fn unit_charge_poly(n: usize, bits: u32) -> ScaledPolynomial {
    let p = ProblemParams::new(A, 1.0, n as f64).expect("valid parameters");
    synthesize_last(&p, n, InitMode::Paper, &PrecisionContext::default().with_bits(bits)).expect("synthesis")
}

pub fn real(x: f64, bits: u32) -> Float {
    Float::with_val(bits, x)
}

pub fn cplx(re: f64, im: f64, bits: u32) -> Complex {
    Complex::with_val(bits, (re, im))
}
