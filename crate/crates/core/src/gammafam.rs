//! The γ > 0 family: droplets K_γ, their skeletons 𝒮_γ, the density |y_γ|
//! and the phase φ_γ = ∫_{β_γ} y_γ.
//!
//! For a ≥ 1 the droplet is the image of the unit circle under
//! f_γ(ν) = ρν − κ/(ν−α) − κ/α and 𝒮_γ is an arc from β_γ to β̄_γ. For a < 1
//! the droplet is an annulus-like region D(0,√(1+γ)) ∖ D(a,√γ) and 𝒮_γ is a
//! closed curve through β_γ around [0, a].
//!
//! Everything here is f64 except the cubic for α², which is bisected in
//! extended precision so the stored root is good to far below f64 rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use rug::{Complex, Float};

use crate::geometry::{hausdorff, trace_skeleton, CurveMeasure, PlanarCurve, ProblemParams, Side};
use crate::mpnum::{contour_quadrature_tol, from_c64, to_c64, Circle, PrecisionContext};
use crate::{Error, Result};

const CUBIC_BITS: u32 = 200;
pub const MIN_STEP: f64 = 1e-6;
const SNAP_FACTOR: f64 = 1e-4;

/// Parameters only present for a ≥ 1.
#[derive(Debug, Clone)]
pub struct OuterParams {
    pub alpha: f64,
    pub rho: f64,
    pub kappa: f64,
    /// ρ/α, the zero of y_γ on the real axis
    pub b_gamma: f64,
    /// α² as bisected
    pub alpha_sq_mp: Float,
}

#[derive(Debug, Clone)]
pub struct GammaFamilyParams {
    pub a: f64,
    pub gamma: f64,
    pub beta_gamma: Complex64,
    pub beta_gamma_conj: Complex64,
    pub outer: Option<OuterParams>,
}

fn cubic_mp(a: f64, gamma: f64, x: &Float) -> Float {
    let p = CUBIC_BITS;
    let a2 = Float::with_val(p, a) * a;
    let g = Float::with_val(p, gamma);
    let coef = (Float::with_val(p, &a2 + 2u32) + g * 4u32) / (Float::with_val(p, &a2) * 2u32);
    let b = Float::with_val(p, &a2 * &a2).recip() / 2u32;
    let x2 = Float::with_val(p, x * x);
    Float::with_val(p, &x2 * x) - coef * x2 + b
}

/// α, ρ, κ, β_γ, b_γ for a ≥ 1; β_γ for a < 1.
pub fn solve_gamma_params(a: f64, gamma: f64) -> Result<GammaFamilyParams> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("a must be positive, got {a}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain(format!("γ must be positive, got {gamma}")));
    }
    if a < 1.0 {
        let disc = (1.0 - a * a).powi(2) - 4.0 * a * a * gamma;
        if disc <= 0.0 {
            return Err(Error::domain(format!(
                "γ = {gamma} too large for a = {a}: need (1−a²)² > 4a²γ"
            )));
        }
        let beta = (a * a + 1.0 - disc.sqrt()) / (2.0 * a);
        let b = Complex64::new(beta, 0.0);
        return Ok(GammaFamilyParams {
            a,
            gamma,
            beta_gamma: b,
            beta_gamma_conj: b,
            outer: None,
        });
    }
    // P(0) = 1/(2a⁴) > 0 and P(1/a²) = −2γ/a⁶ < 0
    let p = CUBIC_BITS;
    let mut lo = Float::new(p);
    let mut hi = Float::with_val(p, a).square().recip();
    for _ in 0..p + 8 {
        let mid = Float::with_val(p, &lo + &hi) / 2u32;
        if cubic_mp(a, gamma, &mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = Float::with_val(p, &lo + &hi) / 2u32;
    let alpha = Float::with_val(p, x.sqrt_ref()).to_f64();
    let rho = (1.0 + a * a * alpha * alpha) / (2.0 * a * alpha);
    let kappa = ((1.0 - alpha * alpha) * (1.0 - a * a * alpha * alpha) / (2.0 * a * alpha)).max(0.0);
    let beta = Complex64::new(alpha * rho - kappa / alpha, 2.0 * (kappa * rho).sqrt());
    Ok(GammaFamilyParams {
        a,
        gamma,
        beta_gamma: beta,
        beta_gamma_conj: beta.conj(),
        outer: Some(OuterParams {
            alpha,
            rho,
            kappa,
            b_gamma: rho / alpha,
            alpha_sq_mp: x,
        }),
    })
}

impl GammaFamilyParams {
    /// |P_γ(α²)| at the stored extended-precision root (0 for a < 1).
    pub fn cubic_residual(&self) -> f64 {
        match &self.outer {
            Some(o) => cubic_mp(self.a, self.gamma, &o.alpha_sq_mp).abs().to_f64(),
            None => 0.0,
        }
    }

    fn snap_radius(&self) -> f64 {
        let gap = (self.beta_gamma - self.beta_gamma_conj).norm();
        SNAP_FACTOR * if gap > 0.0 { gap } else { self.beta_gamma.re }
    }

    /// f_γ(ν) = ρν − κ/(ν−α) − κ/α (a ≥ 1).
    pub fn f_gamma(&self, nu: Complex64) -> Option<Complex64> {
        self.outer
            .as_ref()
            .map(|o| o.rho * nu - o.kappa / (nu - o.alpha) - o.kappa / o.alpha)
    }

    fn on_cut(&self, z: Complex64) -> bool {
        let h = self.beta_gamma.im;
        self.outer.is_some() && z.re == self.beta_gamma.re && z.im.abs() < h
    }
}

/// y_γ with the exterior branch; for a ≥ 1 the square root is cut along the
/// vertical segment [β_γ, β̄_γ] and positive on the far right of the real axis.
fn y_ext(p: &GammaFamilyParams, z: Complex64) -> Complex64 {
    let a = p.a;
    match &p.outer {
        None => a + p.gamma / (z - a) - (1.0 + p.gamma) / z,
        Some(o) => {
            let w = z - p.beta_gamma.re;
            let h = p.beta_gamma.im;
            let root = if h == 0.0 {
                w
            } else {
                w * (1.0 + h * h / (w * w)).sqrt()
            };
            a * (z - o.b_gamma) * root / (z * (z - a))
        }
    }
}

/// y_γ(z) on the given side of 𝒮_γ; the interior value is the continuation
/// across 𝒮_γ, i.e. the negated exterior formula.
pub fn y_gamma(params: &GammaFamilyParams, z: Complex64, side: Side) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(params.a, 0.0) {
        return Err(Error::Singularity(format!("y_γ has a pole at {z}")));
    }
    if params.on_cut(z) {
        return Err(Error::Branch(format!("{z} lies on the cut [β_γ, β̄_γ]")));
    }
    let y = y_ext(params, z);
    Ok(match side {
        Side::Ext => y,
        Side::Int => -y,
    })
}

/// Residues of y_γ at 0, a and ∞, taken on the side of 𝒮_γ each point lies
/// on: 0 is interior for every a, a is interior only for a < 1.
pub fn residues(params: &GammaFamilyParams) -> Result<[f64; 3]> {
    let ctx = PrecisionContext::new(64)?;
    let a = params.a;
    let beta = params.beta_gamma;
    let circle = |c: f64, r: f64| Circle::new(Complex::with_val(64, (c, 0.0)), Float::with_val(64, r));
    let integral = |c: f64, r: f64, sign: f64| -> Result<Complex64> {
        let v = contour_quadrature_tol(
            |w: &Complex| from_c64(64, sign * y_ext(params, to_c64(w))),
            &circle(c, r),
            &ctx,
            1e-13,
        )?;
        Ok(to_c64(&v) / Complex64::new(0.0, 2.0 * PI))
    };
    let (r0, ra) = if params.outer.is_some() {
        // keep the cut outside both circles
        let gap_a = (a - beta.re).abs().max(0.0);
        (0.5 * beta.re.abs().min(a), 0.5 * gap_a.min(a))
    } else {
        (0.5 * a, 0.5 * a)
    };
    let a_sign = if params.outer.is_some() { 1.0 } else { -1.0 };
    let res0 = integral(0.0, r0, -1.0)?;
    let res_a = integral(a, ra, a_sign)?;
    let big = 2.0 * (a + beta.norm()) + 1.0;
    let res_inf = -integral(0.0, big, 1.0)?;
    Ok([res0.re, res_a.re, res_inf.re])
}

// --- adaptive Gauss–Kronrod (7, 15) on straight segments ---

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(Complex64) -> Complex64>(f: &F, z0: Complex64, z1: Complex64) -> (Complex64, f64) {
    let mid = (z0 + z1) * 0.5;
    let half = (z1 - z0) * 0.5;
    let fc = f(mid);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let d = half * XGK[j];
        let s = f(mid - d) + f(mid + d);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    ((k * half), ((k - g) * half).norm())
}

fn gk_adaptive<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let (v, err) = gk15(f, z0, z1);
    if err <= tol.max(1e-14 * v.norm()) || (z1 - z0).norm() < 1e-14 {
        return Ok(v);
    }
    if depth == 0 || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::NonConvergence(format!(
            "segment quadrature from {z0} to {z1}: error estimate {err:.2e}"
        )));
    }
    let m = (z0 + z1) * 0.5;
    Ok(gk_adaptive(f, z0, m, tol / 2.0, depth - 1)? + gk_adaptive(f, m, z1, tol / 2.0, depth - 1)?)
}

fn segment_integral(p: &GammaFamilyParams, z0: Complex64, z1: Complex64, tol: f64) -> Result<Complex64> {
    gk_adaptive(&|z| y_ext(p, z), z0, z1, tol, 60)
}

/// ∫ y_γ from a square-root zero `zb` to `z1`, with s = zb + (z1−zb)u² to
/// smooth the endpoint.
fn branch_segment(p: &GammaFamilyParams, zb: Complex64, z1: Complex64, tol: f64) -> Result<Complex64> {
    let d = z1 - zb;
    let f = |u: Complex64| y_ext(p, zb + d * (u.re * u.re)) * (2.0 * u.re) * d;
    gk_adaptive(&f, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), tol, 60)
}

// --- φ_γ by routed quadrature ---

fn route(p: &GammaFamilyParams, z: Complex64, r0: f64) -> Result<Vec<Complex64>> {
    let b = p.beta_gamma;
    let x = b.re;
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(p.a, 0.0) {
        return Err(Error::Singularity(format!("φ_γ is singular at {z}")));
    }
    if p.on_cut(z) {
        return Err(Error::Routing(format!("{z} lies on the cut [β_γ, β̄_γ]")));
    }
    let top = Complex64::new(x, r0);
    if z.im >= 0.0 {
        Ok(vec![b, top, z])
    } else {
        Ok(vec![
            b,
            top,
            Complex64::new(-r0, r0),
            Complex64::new(-r0, -r0),
            Complex64::new(x, -r0),
            z,
        ])
    }
}

/// φ_γ(z) = ∫_{β_γ}^z y_γ(s) ds in ℂ ∖ ([0, ∞) ∪ [β_γ, β̄_γ]), exterior branch.
///
/// The path leaves β_γ upward; points in the lower half plane are reached
/// around the left of the origin. Points of (0, ∞) get the boundary value
/// from above.
pub fn phi_gamma(params: &GammaFamilyParams, z: Complex64) -> Result<Complex64> {
    let r0 = 2.0 * z.norm().max(params.a).max(params.beta_gamma.norm()) + 1.0;
    phi_gamma_via(params, z, r0)
}

/// As [`phi_gamma`] with the detour box of half-width `r0`.
pub fn phi_gamma_via(params: &GammaFamilyParams, z: Complex64, r0: f64) -> Result<Complex64> {
    if z == params.beta_gamma {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let far = z.norm().max(params.a).max(params.beta_gamma.norm());
    if r0 <= far {
        return Err(Error::Routing(format!("detour radius {r0} does not clear {far}")));
    }
    let path = route(params, z, r0)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let last = path.len() - 2;
    for (k, w) in path.windows(2).enumerate() {
        acc += if k == 0 {
            branch_segment(params, w[0], w[1], 1e-13)?
        } else if k == last && w[1] == params.beta_gamma_conj {
            -branch_segment(params, w[1], w[0], 1e-13)?
        } else {
            segment_integral(params, w[0], w[1], 1e-13)?
        };
    }
    Ok(acc)
}

// --- tracing 𝒮_γ ---

/// Unit tangent along which y_γ dz is negative imaginary.
fn field(p: &GammaFamilyParams, z: Complex64) -> Complex64 {
    let y = y_ext(p, z);
    Complex64::new(0.0, -1.0) * y.conj() / y.norm()
}

/// Output of the tracer: the curve and φ_γ accumulated along it.
#[derive(Debug, Clone)]
pub struct GammaTrace {
    pub curve: PlanarCurve,
    pub phi: Vec<Complex64>,
    /// largest |Re φ_γ| after projection
    pub max_re_phi: f64,
    /// φ_γ at the far endpoint (β̄_γ, or β_γ after one loop)
    pub phi_end: Complex64,
}

/// Start directions: θ with φ_γ(β_γ + εe^{iθ}) on the negative imaginary axis.
fn start_angles(p: &GammaFamilyParams, eps: f64) -> Vec<f64> {
    let m = 720;
    let b = p.beta_gamma;
    let val = |t: f64| {
        let z = b + Complex64::from_polar(eps, t);
        branch_segment(p, b, z, 1e-16).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let mut out = Vec::new();
    let mut prev = val(0.0);
    for j in 1..=m {
        let t1 = 2.0 * PI * j as f64 / m as f64;
        let t0 = t1 - 2.0 * PI / m as f64;
        let cur = val(t1);
        if prev.re.is_finite() && cur.re.is_finite() && prev.re.signum() != cur.re.signum() {
            let (mut lo, mut hi, mut flo) = (t0, t1, prev.re);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = val(mid).re;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            let v = val(t);
            // a genuine level crossing, not a jump across the cut
            if v.im < 0.0 && v.re.abs() < 1e-3 * v.norm() {
                out.push(t);
            }
        }
        prev = cur;
    }
    out
}

fn trace_from(p: &GammaFamilyParams, theta: f64, step: f64) -> Result<GammaTrace> {
    let b = p.beta_gamma;
    let closed = p.outer.is_none();
    let target = if closed { b } else { p.beta_gamma_conj };
    let snap = p.snap_radius();
    let eps = step.min(0.1 * (b - target).norm().max(b.re.abs()));
    let mut z = b + Complex64::from_polar(eps, theta);
    let mut phi = branch_segment(p, b, z, 1e-15)?;
    let mut pts = vec![b, z];
    let mut phis = vec![Complex64::new(0.0, 0.0), phi];
    let mut max_re = phi.re.abs();
    let mut h = step;
    let max_len = 4.0 * PI * (1.0 + p.a + b.norm());
    let mut length = eps;
    let rk = |z: Complex64, h: f64| {
        let k1 = field(p, z);
        let k2 = field(p, z + k1 * (h / 2.0));
        let k3 = field(p, z + k2 * (h / 2.0));
        let k4 = field(p, z + k3 * h);
        z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
    };
    loop {
        let dist = (z - target).norm();
        let far_enough = !closed || phi.im < -PI;
        if far_enough && dist < snap {
            phi -= branch_segment(p, target, z, 1e-15)?;
            if !closed {
                pts.push(target);
                phis.push(phi);
            }
            return Ok(GammaTrace {
                curve: PlanarCurve::from_points(pts, closed),
                phi: phis,
                max_re_phi: max_re,
                phi_end: phi,
            });
        }
        if far_enough && dist < 3.0 * h {
            h = (dist / 3.0).max(MIN_STEP);
        }
        let d0 = field(p, z);
        let mut zn = rk(z, h);
        let mut phin = phi + segment_integral(p, z, zn, 1e-15)?;
        let mut moved = 0.0;
        for _ in 0..4 {
            let y = y_ext(p, zn);
            let dz = -phin.re * y.conj() / y.norm_sqr();
            moved += dz.norm();
            let zp = zn + dz;
            phin += segment_integral(p, zn, zp, 1e-15)?;
            zn = zp;
            if phin.re.abs() < 1e-13 {
                break;
            }
        }
        let d1 = field(p, zn);
        let turn = (d1 / d0).arg().abs();
        let ok = turn < 0.05 && moved < 0.1 * h && phin.re.abs() < 1e-11 && phin.im <= phi.im;
        if !ok {
            if h / 2.0 < MIN_STEP {
                return Err(Error::Tracing(format!(
                    "step rejected below {MIN_STEP} at z = {z} (turn {turn:.2e}, projection {moved:.2e})"
                )));
            }
            h /= 2.0;
            continue;
        }
        length += (zn - z).norm();
        z = zn;
        phi = phin;
        max_re = max_re.max(phi.re.abs());
        pts.push(z);
        phis.push(phi);
        if turn < 0.01 {
            h = (2.0 * h).min(step);
        }
        if length > max_len || phi.im < -2.0 * PI - 0.5 || z.norm() > 1e3 {
            return Err(Error::Tracing(format!(
                "trajectory from angle {theta:.4} missed its endpoint (length {length:.3}, φ = {phi})"
            )));
        }
    }
}

/// 𝒮_γ with its accumulated φ_γ; see [`trace_s_gamma`].
pub fn trace_s_gamma_full(params: &GammaFamilyParams, step: f64) -> Result<GammaTrace> {
    if !(step > MIN_STEP) {
        return Err(Error::domain(format!("step must exceed {MIN_STEP}")));
    }
    let eps = step.min(0.05 * (params.beta_gamma - params.beta_gamma_conj).norm().max(0.0));
    let eps = if eps > 0.0 {
        eps
    } else {
        step.min(0.1 * (params.beta_gamma.re - params.a))
    };
    let mut last = Error::Tracing("no start direction with Re φ_γ = 0 and Im φ_γ < 0".into());
    for theta in start_angles(params, eps) {
        match trace_from(params, theta, step) {
            Ok(t) => {
                if params.outer.is_none() {
                    let c = &t.curve;
                    if c.winding_number(Complex64::new(0.0, 0.0)) == 0
                        || c.winding_number(Complex64::new(params.a, 0.0)) == 0
                    {
                        last = Error::Tracing("closed trajectory does not enclose [0, a]".into());
                        continue;
                    }
                }
                return Ok(t);
            }
            Err(e) => {
                log::debug!("start angle {theta:.4} rejected: {e}");
                last = e
            }
        }
    }
    Err(last)
}

/// The trajectory through β_γ on which y_γ dz is purely imaginary, traced by
/// RK4 at arclength `step` with Newton projection onto Re φ_γ = 0.
///
/// a ≥ 1: the open arc from β_γ to β̄_γ around the origin. a < 1: the closed
/// curve through β_γ around [0, a]. Orientation is the one along which Im φ_γ
/// decreases.
pub fn trace_s_gamma(params: &GammaFamilyParams, step: f64) -> Result<PlanarCurve> {
    trace_s_gamma_full(params, step).map(|t| t.curve)
}

/// μ_γ = |y_γ| dℓ / 2π sampled on a traced 𝒮_γ.
pub fn mu_gamma(params: &GammaFamilyParams, curve: &PlanarCurve) -> CurveMeasure {
    let density = curve
        .points
        .iter()
        .map(|&z| {
            let y = y_ext(params, z).norm() / (2.0 * PI);
            if y.is_finite() {
                y
            } else {
                0.0
            }
        })
        .collect();
    CurveMeasure {
        curve: curve.clone(),
        density,
    }
}

/// ∂K_γ: one closed curve f_γ(e^{iθ}) for a ≥ 1; for a < 1 the outer circle
/// |z| = √(1+γ) followed by the inner circle |z − a| = √γ.
pub fn droplet_boundary(params: &GammaFamilyParams, n_samples: usize) -> Vec<PlanarCurve> {
    let n = n_samples.max(3);
    let th = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64);
    match &params.outer {
        Some(_) => {
            let pts = th
                .map(|t| params.f_gamma(Complex64::from_polar(1.0, t)).unwrap())
                .collect();
            vec![PlanarCurve::from_points(pts, true)]
        }
        None => {
            let ro = (1.0 + params.gamma).sqrt();
            let ri = params.gamma.sqrt();
            let outer = th.clone().map(|t| Complex64::from_polar(ro, t)).collect();
            let inner = th.map(|t| params.a + Complex64::from_polar(ri, t)).collect();
            vec![
                PlanarCurve::from_points(outer, true),
                PlanarCurve::from_points(inner, true),
            ]
        }
    }
}

/// Distances from the γ-family to its γ = 0 limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConvergence {
    pub gamma: f64,
    pub skeleton_hausdorff: f64,
    /// outer boundary component against the unit circle
    pub droplet_hausdorff: f64,
    /// sup |μ_γ − μ| density difference at points of 𝒮_γ away from β, β_γ, β̄_γ
    pub density_sup: f64,
}

/// Compares 𝒮_γ, ∂K_γ and μ_γ with 𝒮, the unit circle and μ.
///
/// Densities are compared outside disks of radius `exclude` about β, β_γ and
/// β̄_γ: for a < 1 the γ = 0 density does not vanish at β but |y_γ| does at β_γ.
pub fn convergence_to_limit(params: &GammaFamilyParams, step: f64, exclude: f64) -> Result<GammaConvergence> {
    let limit = ProblemParams::new(params.a, 1.0, 1.0)?;
    let trace = trace_s_gamma(params, step)?;
    let n = 2048;
    let skel = trace_skeleton(&limit, n)?;
    let skeleton_hausdorff = hausdorff(&trace, &skel)?;
    let circle = PlanarCurve::from_points(
        (0..n)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
            .collect(),
        true,
    );
    let droplet = droplet_boundary(params, n);
    let droplet_hausdorff = hausdorff(&droplet[0], &circle)?;
    let beta = Complex64::new(limit.beta, 0.0);
    let density_sup = trace
        .points
        .iter()
        .filter(|&&z| {
            [beta, params.beta_gamma, params.beta_gamma_conj]
                .iter()
                .all(|&c| (z - c).norm() > exclude)
        })
        .map(|&z| (y_ext(params, z).norm() - (params.a - 1.0 / z).norm()).abs() / (2.0 * PI))
        .fold(0.0, f64::max);
    Ok(GammaConvergence {
        gamma: params.gamma,
        skeleton_hausdorff,
        droplet_hausdorff,
        density_sup,
    })
}

/// Header fields for curve CSV output.
pub fn curve_header(params: &GammaFamilyParams, kind: &str) -> String {
    format!("a={} kind={kind} gamma={}", params.a, params.gamma)
}
