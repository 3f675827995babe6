use rayon::prelude::*;
use rug::{Complex, Float};

use super::{cabs, expi, pi, PrecisionContext};
use crate::{Error, Result};

/// A closed curve parametrized over t ∈ [0, 1).
pub trait ClosedContour: Sync {
    /// Point z(t) and derivative z'(t).
    fn at(&self, t: &Float, prec: u32) -> (Complex, Complex);
}

#[derive(Debug, Clone)]
pub struct Circle {
    pub center: Complex,
    pub radius: Float,
}

impl Circle {
    pub fn new(center: Complex, radius: Float) -> Self {
        Circle { center, radius }
    }
}

impl ClosedContour for Circle {
    fn at(&self, t: &Float, prec: u32) -> (Complex, Complex) {
        let theta = Float::with_val(prec, t * pi(prec)) * 2u32;
        let e = expi(prec, &theta);
        let r = Float::with_val(prec, &self.radius);
        let z = Complex::with_val(prec, &e * &r) + &self.center;
        let two_pi_r = Float::with_val(prec, pi(prec) * 2u32) * r;
        let dz = (e * two_pi_r).mul_i(false);
        (z, dz)
    }
}

const MAX_NODES: usize = 1 << 17;

/// ∮ f(w) dw by the periodic trapezoidal rule with node doubling.
///
/// Stops when doubling changes the result by less than 2^{−(bits−16)} relative
/// to the result, plus a rounding floor proportional to ∮|f||dw|.
pub fn contour_quadrature<F, C>(f: F, contour: &C, ctx: &PrecisionContext) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex + Sync,
    C: ClosedContour + ?Sized,
{
    contour_quadrature_tol(f, contour, ctx, ctx.tolerance().to_f64())
}

/// As [`contour_quadrature`] with an explicit relative tolerance.
pub fn contour_quadrature_tol<F, C>(f: F, contour: &C, ctx: &PrecisionContext, tol: f64) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex + Sync,
    C: ClosedContour + ?Sized,
{
    let prec = ctx.bits();
    let eval = |j: usize, m: usize| -> (Complex, Float) {
        let t = Float::with_val(prec, j) / m as u32;
        let (z, dz) = contour.at(&t, prec);
        let v = f(&z) * dz;
        let a = cabs(&v);
        (v, a)
    };
    let sum_nodes = |idx: Vec<usize>, m: usize| -> (Complex, Float) {
        idx.into_par_iter().map(|j| eval(j, m)).reduce(
            || (Complex::new(prec), Float::new(prec)),
            |(s1, a1), (s2, a2)| (s1 + s2, a1 + a2),
        )
    };

    let mut m = ctx.quadrature_nodes.max(8);
    let (mut sum, mut l1) = sum_nodes((0..m).collect(), m);
    let mut prev = Complex::with_val(prec, &sum / m as u32);
    let slack = Float::with_val(prec, 1u32) >> (prec as i32 - 8);
    let tol = Float::with_val(prec, tol);
    loop {
        let m2 = 2 * m;
        let (s_odd, a_odd) = sum_nodes((0..m).map(|j| 2 * j + 1).collect(), m2);
        sum += s_odd;
        l1 += a_odd;
        m = m2;
        let cur = Complex::with_val(prec, &sum / m as u32);
        let change = cabs(&Complex::with_val(prec, &cur - &prev));
        let scale = cabs(&cur);
        let floor = Float::with_val(prec, &l1 / m as u32) * &slack;
        let target = Float::with_val(prec, &scale * &tol) + &floor;
        if change <= target {
            return Ok(cur);
        }
        if m >= MAX_NODES {
            if change <= target * 10u32 {
                return Ok(cur);
            }
            return Err(Error::NonConvergence(format!(
                "contour quadrature: relative change {:.3e} after {m} nodes",
                (change / scale.max(&floor)).to_f64()
            )));
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Circle {
        Circle::new(Complex::new(256), Float::with_val(256, 1u32))
    }

    #[test]
    fn residue_of_reciprocal() {
        let ctx = PrecisionContext::default();
        let v = contour_quadrature(|w| Complex::with_val(256, w.recip_ref()), &unit(), &ctx).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!(v.real().to_f64().abs() < 1e-60);
        assert!((v.imag().to_f64() - two_pi).abs() < 1e-14);
        let exact = Float::with_val(256, pi(256) * 2u32);
        assert!(Float::with_val(256, v.imag() - exact).abs() < 1e-70);
    }

    #[test]
    fn entire_and_double_pole_vanish() {
        let ctx = PrecisionContext::default();
        let v = contour_quadrature(|w| Complex::with_val(256, -w).exp(), &unit(), &ctx).unwrap();
        assert!(cabs(&v) < 1e-70);
        let c2 = Circle::new(Complex::new(256), Float::with_val(256, 2u32));
        let v = contour_quadrature(|w| Complex::with_val(256, w * w).recip(), &c2, &ctx).unwrap();
        assert!(cabs(&v) < 1e-70);
    }
}
