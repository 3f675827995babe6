//! Hankel-contour integrals: f̂(ζ) and the moments c_k.
//!
//! The contour ℒ is the parabola s(t) = μ e^{iθ}(1+it)², t ∈ ℝ, which starts at
//! −∞ below the ray arg s = θ+π, circles the origin counterclockwise and
//! returns above it. On it s^{−c} = μ^{−c}(1+it)^{−2c}e^{−icθ} with principal
//! powers of 1+it, so the cut of s^{−c} lies on the ray arg s = θ+π. The
//! trapezoidal rule in t converges geometrically; the step comes from the
//! nearest singularity of the integrand off the real t-axis.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::{expi, pi, rgamma, PrecisionContext};
use crate::{Error, Result};

struct Parabola {
    mu: f64,
    theta: f64,
    /// half-width of the strip of analyticity in t
    strip: f64,
}

/// (1/2πi) ∫_ℒ e^s s^{−c} g(s) ds
fn integrate<G>(c: &Float, par: &Parabola, result_scale_ln: f64, g: G, ctx: &PrecisionContext) -> Complex
where
    G: Fn(&Complex) -> Complex + Sync,
{
    let Parabola { mu, theta, strip } = *par;
    let cos_t = theta.cos();
    let sin_t = theta.sin().abs();
    let d = 0.9 * strip.min(1.0);
    let peak = mu / cos_t;
    let lost = (peak - result_scale_ln).max(0.0);
    let wp = ctx.bits() + (lost / LN_2).ceil() as u32 + 24;
    let depth = wp as f64 * LN_2 + 16.0;
    let growth = mu * ((1.0 + d) * (1.0 + d) - 1.0) / cos_t + 2.0 * (10.0 / d).ln();
    let h = 2.0 * PI * d / (depth + growth);
    let cf = c.to_f64();
    let k = depth + peak + 2.0 * cf.min(0.0).abs() * (depth / (mu * cos_t)).sqrt().ln().max(1.0);
    let a = mu * cos_t;
    let b = 2.0 * mu * sin_t;
    let tmax = (b + (b * b + 4.0 * a * k).sqrt()) / (2.0 * a);
    let half = (tmax / h).ceil() as i64;

    let hp = Float::with_val(wp, h);
    let mu_p = Float::with_val(wp, mu);
    let th = Float::with_val(wp, theta);
    let rot = expi(wp, &th);
    let cp = Float::with_val(wp, c);
    // μ^{−c} e^{−icθ}
    let pre = Complex::with_val(
        wp,
        (
            Float::with_val(wp, mu_p.ln_ref()) * Float::with_val(wp, -&cp),
            Float::with_val(wp, &th * &cp) * -1i32,
        ),
    )
    .exp();
    let node = |j: i64| -> Complex {
        let t = Float::with_val(wp, &hp * j);
        let w = Complex::with_val(wp, (1u32, &t));
        let w2 = Complex::with_val(wp, w.square_ref());
        let s = Complex::with_val(wp, &w2 * &mu_p) * &rot;
        // ds/dt = 2iμ e^{iθ}(1+it)
        let ds = (Complex::with_val(wp, &w * &rot) * Float::with_val(wp, &mu_p * 2u32)).mul_i(false);
        let pw = (w.ln() * Float::with_val(wp, &cp * -2i32)).exp();
        let e = Complex::with_val(wp, s.exp_ref());
        e * pw * g(&s) * ds
    };
    let sum = (-half..=half)
        .into_par_iter()
        .map(node)
        .reduce(|| Complex::new(wp), |x, y| x + y);
    let two_pi = Float::with_val(wp, pi(wp) * 2u32);
    // (1/2πi)·Σ = −i Σ/(2π)
    let out = (sum * pre * hp / two_pi).mul_i(true);
    Complex::with_val(ctx.bits(), out)
}

/// f̂(ζ) = (−1/2πi) ∫_ℒ e^s / (s^c (s−ζ)) ds for c ∈ (−1, 2).
///
/// ℒ is rotated by θ = arg(ζ)/2, so f̂ is the continuation from Re ζ > 0 cut
/// along the negative real axis.
pub fn fhat(c: &Float, zeta: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if !(*c > -1 && *c < 2) {
        return Err(Error::domain(format!("fhat needs c ∈ (−1, 2), got {c}")));
    }
    let zr = zeta.real().to_f64();
    let zi = zeta.imag().to_f64();
    let r = zr.hypot(zi);
    if r < 1e-6 {
        return Err(Error::ContourCollision(format!(
            "ζ = {zeta} is within 1e-6 of the contour through the origin"
        )));
    }
    let psi = zi.atan2(zr);
    if zi == 0.0 && zr < 0.0 {
        return Err(Error::ContourCollision(format!(
            "ζ = {zeta} lies on the cut of f̂; rotate to either side"
        )));
    }
    if zr < 0.0 {
        return fhat_left(c, zeta, r, ctx);
    }
    let theta = psi / 2.0;
    // ζ e^{−iθ} = r e^{iψ/2}
    let xr = r * theta.cos();
    let mu = (xr / 2.0).min(1.0);
    // pole at t with (1+it)² = ζ'/μ
    let w = num_complex::Complex64::from_polar(r / mu, theta).sqrt();
    let strip = w.re - 1.0;
    if strip < 1e-6 {
        return Err(Error::ContourCollision(format!("ζ = {zeta} too close to ℒ")));
    }
    let z = Complex::with_val(ctx.bits() + 64, zeta);
    let scale = -(1.0 + r).ln() - 4.0;
    let par = Parabola { mu, theta, strip };
    let v = integrate(
        c,
        &par,
        scale,
        move |s| {
            let p = s.prec().0;
            Complex::with_val(p, s - &z).recip()
        },
        ctx,
    );
    Ok(-v)
}

/// Re ζ < 0: the rotated parabola would pass close to the origin, so use the
/// unrotated one with ζ inside it and add back the residue e^ζ ζ^{−c}.
fn fhat_left(c: &Float, zeta: &Complex, r: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let mu = r.max(1.0);
    let zc = num_complex::Complex64::new(zeta.real().to_f64(), zeta.imag().to_f64());
    let w = (zc / mu).sqrt();
    let strip = 1.0 - w.re;
    let wp = ctx.bits() + 64;
    let z = Complex::with_val(wp, zeta);
    let scale = -(1.0 + r).ln() - 4.0;
    let par = Parabola { mu, theta: 0.0, strip };
    let v = integrate(
        c,
        &par,
        scale,
        move |s| {
            let p = s.prec().0;
            Complex::with_val(p, s - &z).recip()
        },
        ctx,
    );
    let zp = Complex::with_val(wp, zeta);
    let res = (Complex::with_val(wp, zp.ln_ref()) * Float::with_val(wp, -c)).exp() * zp.exp();
    Ok(Complex::with_val(ctx.bits(), res - v))
}

/// c_k = sin(cπ)Γ(k−c)/(π(−1)^{k−1}).
///
/// By the reflection formula this is exactly 1/Γ(c+1−k), which is entire in c,
/// so integer c needs no limit.
pub fn hankel_ck(c: &Float, k: u32) -> Float {
    let x = Float::with_val(c.prec(), c + 1u32) - k;
    rgamma(&x)
}

/// (1/2πi) ∫_ℒ s^{k−1} e^s s^{−c} ds by quadrature, an independent route to c_k.
pub fn hankel_moment(c: &Float, k: u32, ctx: &PrecisionContext) -> Complex {
    let par = Parabola {
        mu: 1.0,
        theta: 0.0,
        strip: 1.0,
    };
    integrate(
        c,
        &par,
        -8.0,
        move |s| {
            let p = s.prec().0;
            Complex::with_val(p, s).pow(k as i32 - 1)
        },
        ctx,
    )
}
