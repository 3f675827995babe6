//! Parabolic cylinder function D₋c(ζ).

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::{cabs, expi, gamma::pochhammer, pi, rgamma, PrecisionContext};
use crate::{Error, Result};

/// Rough ln|√(2π) e^{ζ²/4} D₋c(ζ)| from the large-|ζ| behaviour, used only to
/// size guard bits. Deliberately on the low side.
fn integral_size_estimate(c: f64, zr: f64, zi: f64) -> f64 {
    let r = zr.hypot(zi).max(2.0);
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let recessive = half_ln_2pi - c * r.ln();
    let mut est = recessive;
    let c_is_pole = c <= 0.0 && c.fract() == 0.0;
    if zr < 0.0 && !c_is_pole {
        let (lg, _) = Float::with_val(64, c).ln_abs_gamma();
        let re_z2 = zr * zr - zi * zi;
        let dominant = (2.0 * PI).ln() - lg.to_f64() + re_z2 / 2.0 + (c - 1.0) * r.ln();
        est = est.max(dominant);
    }
    est.min(0.0) - 4.0
}

/// D₋c(ζ) from its integral representation on the vertical line Re s = ε,
/// ε = max(1, Re ζ), with principal s^{−c}.
///
/// Substituting s = ε + i(Im ζ + u) the integrand is
/// e^{(ε−Re ζ+iu)²/2} s^{−c}, a Gaussian in u. The trapezoidal step comes from
/// the width of the strip of analyticity (bounded by the branch point s = 0)
/// and the working precision is raised by the cancellation expected when the
/// line passes far to the right of ζ.
pub fn weber_d(c: &Float, zeta: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if !(*c > -1) {
        return Err(Error::domain(format!("weber_D needs c > −1, got {c}")));
    }
    let cf = c.to_f64();
    let zr = zeta.real().to_f64();
    let zi = zeta.imag().to_f64();
    let eps = zr.max(1.0);
    let shift = eps - zr;
    let peak = shift * shift / 2.0;
    let lost = (peak - integral_size_estimate(cf, zr, zi)).max(0.0);
    let guard = (lost / LN_2).ceil() as u32 + 24;
    let wp = ctx.bits() + guard;

    let depth = wp as f64 * LN_2 + 8.0;
    let d = (0.9 * eps).min((2.0 * depth).sqrt());
    let growth = d * shift + d * d / 2.0 + cf.max(0.0) * 10f64.ln();
    let h = 2.0 * PI * d / (depth + growth);
    let poly_tail = cf.min(0.0).abs() * (2.0 + eps + zi.abs() + (2.0 * depth).sqrt()).ln();
    let tmax = (2.0 * (depth + poly_tail)).sqrt();
    let half = (tmax / h).ceil() as i64;

    let hp = Float::with_val(wp, h);
    let shift_p = Float::with_val(wp, eps) - Float::with_val(wp, zeta.real());
    let eps_p = Float::with_val(wp, eps);
    let cp = Float::with_val(wp, c);
    let zim = Float::with_val(wp, zeta.imag());

    let term = |j: i64| -> Complex {
        let u = Float::with_val(wp, &hp * j);
        let w = Complex::with_val(wp, (&shift_p, &u));
        let g = Complex::with_val(wp, w.square_ref()) / 2u32;
        let s = Complex::with_val(wp, (&eps_p, Float::with_val(wp, &zim + &u)));
        let ls = s.ln() * &cp;
        (g - ls).exp()
    };
    let sum = (-half..=half)
        .into_par_iter()
        .map(term)
        .reduce(|| Complex::new(wp), |a, b| a + b);

    let z = Complex::with_val(wp, zeta);
    let pre = (Complex::with_val(wp, z.square_ref()) / -4i32).exp();
    let sqrt_2pi = Float::with_val(wp, pi(wp) * 2u32).sqrt();
    let out = sum * pre * hp / sqrt_2pi;
    Ok(Complex::with_val(ctx.bits(), out))
}

/// Truncated large-|ζ| expansion with its remainder bound.
#[derive(Debug, Clone)]
pub struct WeberAsymptotic {
    pub value: Complex,
    pub bound: Float,
}

/// e^{−ζ²/4} ζ^{−c} Σ_{s<terms} (−1)^s (c)_{2s}/(s!(2ζ²)^s) and a bound on
/// |D₋c(ζ) − value|.
///
/// The bound uses C = max(2^{terms+2}, C_exact), where C_exact is the
/// constant obtained from the remainder estimate for U(c/2, 1/2, ζ²/2); when
/// the latter is below 2^{terms+2} the simpler constant is returned.
pub fn weber_d_asymptotic(c: &Float, zeta: &Complex, terms: u32, ctx: &PrecisionContext) -> Result<WeberAsymptotic> {
    let prec = ctx.bits();
    if terms == 0 {
        return Err(Error::domain("weber_D_asymptotic needs terms ≥ 1"));
    }
    if !(*zeta.real() > 0) {
        return Err(Error::domain(format!(
            "weber_D_asymptotic needs |arg ζ| < π/2, got ζ = {zeta}"
        )));
    }
    let z = Complex::with_val(prec, zeta);
    let z2 = Complex::with_val(prec, z.square_ref());
    let x = cabs(&z2);
    let q = Float::with_val(prec, Float::with_val(prec, 1u32) - Float::with_val(prec, c * 2u32)).abs();
    if x < Float::with_val(prec, &q * 2u32) {
        return Err(Error::domain(format!(
            "weber_D_asymptotic needs |ζ²| ≥ 2|1−2c| (|ζ²| = {:.6}, |1−2c| = {:.6})",
            x.to_f64(),
            q.to_f64()
        )));
    }

    let cp = Float::with_val(prec, c);
    let two_z2 = Complex::with_val(prec, &z2 * 2u32);
    let mut sum = Complex::new(prec);
    let mut pw = Complex::with_val(prec, 1u32);
    let mut fact = Float::with_val(prec, 1u32);
    for s in 0..terms {
        if s > 0 {
            pw *= &two_z2;
            fact *= s;
        }
        let mut t = Complex::with_val(prec, pochhammer(&cp, 2 * s)) / &pw / &fact;
        if s % 2 == 1 {
            t = -t;
        }
        sum += t;
    }
    let lead = (Complex::with_val(prec, &z2 / -4i32)).exp()
        * (Complex::with_val(prec, z.ln_ref()) * Float::with_val(prec, -&cp)).exp();
    let value = Complex::with_val(prec, &lead * &sum);

    // constant of the remainder estimate
    let sigma = Float::with_val(prec, &q / &x);
    let one_minus = Float::with_val(prec, 1u32) - &sigma;
    let alpha = Float::with_val(prec, one_minus.recip_ref());
    let cc = Float::with_val(prec, &cp * &cp) - &cp + 1u32;
    let rho = Float::with_val(prec, cc.abs() / 4u32)
        + Float::with_val(prec, &sigma * (Float::with_val(prec, &sigma / 4u32) + 1u32))
            / Float::with_val(prec, one_minus.square_ref());
    let expo = Float::with_val(prec, &alpha * &rho) * 4u32 / &x;
    let two_n1 = Float::with_val(prec, 2u32).pow(terms + 1);
    let c_exact = two_n1 * &alpha * expo.exp();
    let two_n2 = Float::with_val(prec, 2u32).pow(terms + 2);
    let cst = if c_exact > two_n2 { c_exact } else { two_n2 };

    let n = terms;
    let half_c = Float::with_val(prec, &cp / 2u32);
    let half_c1 = Float::with_val(prec, &half_c + 0.5f64);
    let mut nfact = Float::with_val(prec, 1u32);
    for k in 2..=n {
        nfact *= k;
    }
    let num = Float::with_val(prec, pochhammer(&half_c, n) * pochhammer(&half_c1, n)).abs();
    let den = nfact * x.clone().pow(n);
    let bound = cst * num / den * cabs(&lead);
    Ok(WeberAsymptotic { value, bound })
}

/// Absolute residuals of the three connection formulas
///
/// 1. D₋c(ζ) = Γ(1−c)/√(2π) [e^{−cπi/2} D_{c−1}(iζ) + e^{cπi/2} D_{c−1}(−iζ)]
/// 2. D₋c(ζ) = e^{−cπi} D₋c(−ζ) + √(2π)/Γ(c) e^{(1−c)πi/2} D_{c−1}(−iζ)
/// 3. D₋c(ζ) = e^{cπi} D₋c(−ζ) + √(2π)/Γ(c) e^{(c−1)πi/2} D_{c−1}(iζ)
///
/// At c = 1, 2, … formula 1 is 0·∞; it is then checked at c + 2^{−bits/3},
/// where it holds exactly and Γ(1−c) is finite.
pub fn weber_connection_residuals(c: &Float, zeta: &Complex, ctx: &PrecisionContext) -> Result<[Float; 3]> {
    let prec = ctx.bits();
    let cp = Float::with_val(prec, c);
    let one_minus = Float::with_val(prec, 1u32) - &cp;
    let c1 = if one_minus <= 0 && one_minus.is_integer() {
        let bump = Float::with_val(prec, 1u32) >> (prec as i32 / 3);
        Float::with_val(prec, &cp + bump)
    } else {
        cp.clone()
    };
    let r1 = {
        let one_minus = Float::with_val(prec, 1u32) - &c1;
        let d = weber_d(&c1, zeta, ctx)?;
        let iz = Complex::with_val(prec, zeta).mul_i(false);
        let miz = Complex::with_val(prec, zeta).mul_i(true);
        let dp = weber_d(&one_minus, &iz, ctx)?;
        let dm = weber_d(&one_minus, &miz, ctx)?;
        let half_pi_c = Float::with_val(prec, pi(prec) * &c1) / 2u32;
        let e_m = expi(prec, &Float::with_val(prec, -&half_pi_c));
        let e_p = expi(prec, &half_pi_c);
        let g = Float::with_val(prec, one_minus.gamma_ref());
        let sqrt_2pi = Float::with_val(prec, pi(prec) * 2u32).sqrt();
        let rhs = (e_m * dp + e_p * dm) * g / sqrt_2pi;
        cabs(&(d - rhs))
    };
    let d = weber_d(&cp, zeta, ctx)?;
    let dneg = weber_d(&cp, &Complex::with_val(prec, -zeta), ctx)?;
    let iz = Complex::with_val(prec, zeta).mul_i(false);
    let miz = Complex::with_val(prec, zeta).mul_i(true);
    let dc_m = weber_d(&one_minus, &miz, ctx)?;
    let dc_p = weber_d(&one_minus, &iz, ctx)?;
    let rg = rgamma(&cp);
    let sqrt_2pi = Float::with_val(prec, pi(prec) * 2u32).sqrt();
    let k = Float::with_val(prec, &sqrt_2pi * &rg);
    let pic = Float::with_val(prec, pi(prec) * &cp);
    let half_pi_1mc = Float::with_val(prec, pi(prec) * &one_minus) / 2u32;
    let r2 = {
        let rhs = expi(prec, &Float::with_val(prec, -&pic)) * &dneg + expi(prec, &half_pi_1mc) * &dc_m * &k;
        cabs(&Complex::with_val(prec, &d - rhs))
    };
    let r3 = {
        let rhs = expi(prec, &pic) * &dneg + expi(prec, &Float::with_val(prec, -&half_pi_1mc)) * &dc_p * &k;
        cabs(&Complex::with_val(prec, &d - rhs))
    };
    Ok([r1, r2, r3])
}
