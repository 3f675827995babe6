use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{CurveMeasure, PlanarCurve, PointClass, ProblemParams};
use crate::{Error, Result};

const MAX_ITER: usize = 200;

/// F(r) = ln(r/β) − a r cos θ + aβ, i.e. −Re φ_A(re^{iθ}).
fn level(p: &ProblemParams, theta: f64, r: f64) -> f64 {
    (r / p.beta).ln() - p.a * r * theta.cos() + p.a * p.beta
}

fn level_dr(p: &ProblemParams, theta: f64, r: f64) -> f64 {
    1.0 / r - p.a * theta.cos()
}

/// Smallest r > 0 on the ray at angle θ with Re φ_A(re^{iθ}) = η.
///
/// F is increasing up to r* = 1/(a cos θ) (or for all r when cos θ ≤ 0), so the
/// root is bracketed by (0, r*] and found by Newton with bisection fallback.
fn ray_level_root(p: &ProblemParams, theta: f64, eta: f64) -> Result<f64> {
    let g = |r: f64| level(p, theta, r) + eta;
    let cos_t = theta.cos();
    let mut hi = if cos_t > 0.0 {
        1.0 / (p.a * cos_t)
    } else {
        p.beta.max(1.0)
    };
    if cos_t > 0.0 {
        let gh = g(hi);
        if gh.abs() <= 1e-15 {
            return Ok(hi);
        }
        if gh < 0.0 {
            return Err(Error::Tracing(format!(
                "no crossing of Re φ_A = {eta} on the ray θ = {theta}"
            )));
        }
    } else {
        let mut k = 0;
        while g(hi) <= 0.0 {
            hi *= 2.0;
            k += 1;
            if k > 200 {
                return Err(Error::Tracing(format!("no upper bracket on θ = {theta}")));
            }
        }
    }
    let mut lo = hi / 2.0;
    let mut k = 0;
    while g(lo) >= 0.0 {
        lo /= 2.0;
        k += 1;
        if k > 1100 {
            return Err(Error::Tracing(format!("no lower bracket on θ = {theta}")));
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITER {
        let gx = g(x);
        if gx == 0.0 {
            return Ok(x);
        }
        if gx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = level_dr(p, theta, x);
        let mut nx = x - gx / d;
        if !(nx > lo && nx < hi) || !nx.is_finite() {
            nx = 0.5 * (lo + hi);
        }
        if (nx - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(nx);
        }
        x = nx;
    }
    Err(Error::Tracing(format!("ray solve did not converge at θ = {theta}")))
}

fn angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

/// Polar radius of 𝒮 in direction θ.
pub fn skeleton_radius(params: &ProblemParams, theta: f64) -> Result<f64> {
    ray_level_root(params, theta, 0.0)
}

/// The skeleton 𝒮: Re(log z − az) = log β − aβ with Re z ≤ β, sampled at
/// `n_samples` uniform polar angles starting from β at θ = 0.
pub fn trace_skeleton(params: &ProblemParams, n_samples: usize) -> Result<PlanarCurve> {
    level_curve(params, 0.0, n_samples)
}

/// The component inside 𝒮 of the level curve Re φ_A = η (η ≥ 0).
pub fn eta_curve(params: &ProblemParams, eta: f64, n_samples: usize) -> Result<PlanarCurve> {
    if !(eta >= 0.0) {
        return Err(Error::domain(format!("eta must be ≥ 0, got {eta}")));
    }
    level_curve(params, eta, n_samples)
}

fn level_curve(params: &ProblemParams, eta: f64, n_samples: usize) -> Result<PlanarCurve> {
    if n_samples < 64 {
        return Err(Error::domain(format!("need at least 64 samples, got {n_samples}")));
    }
    let th = angles(n_samples);
    let radii: Vec<f64> = th
        .par_iter()
        .map(|&t| {
            if t == 0.0 && eta == 0.0 {
                return Ok(params.beta);
            }
            let r = ray_level_root(params, t, eta)?;
            if r * t.cos() > params.beta * (1.0 + 1e-12) {
                return Err(Error::Tracing(format!(
                    "crossing on θ = {t} has Re z = {} > β",
                    r * t.cos()
                )));
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let pts = th
        .iter()
        .zip(&radii)
        .map(|(&t, &r)| Complex64::from_polar(r, t))
        .collect();
    Ok(PlanarCurve::from_points(pts, true))
}

/// μ = |a − 1/z| dℓ / 2π sampled on a traced skeleton.
pub fn mu_on_skeleton(params: &ProblemParams, curve: &PlanarCurve) -> CurveMeasure {
    let density = curve
        .points
        .iter()
        .map(|z| (params.a - 1.0 / z).norm() / (2.0 * PI))
        .collect();
    CurveMeasure {
        curve: curve.clone(),
        density,
    }
}

/// Default radius of the disk D_β where the local parametrix replaces the
/// outer asymptotics: a third of the distance from β to the nearer of the
/// origin and the critical point 1/a (a < 1) or the charge a (a > 1).
pub fn default_d_beta_radius(params: &ProblemParams) -> f64 {
    (params.a - 1.0 / params.a).abs().min(params.beta) / 3.0
}

impl PlanarCurve {
    /// Ext/Int/OnCurve against a traced skeleton, band 10 × mean spacing.
    pub fn classify(&self, z: Complex64) -> PointClass {
        self.classify_with_band(z, 10.0 * self.mean_spacing())
    }
}

/// Right-hand side of the zero-location equation −Re φ_A(z) = RHS(z) and its
/// derivative along the ray through z.
///
/// a > 1: (c−½)log N/N − log Γ(c)/N
///        + (1/N) log|((z−β)/(z−a))^c √(2π)(a²−1)^c / (a (z−β)^{1−c} z^c)|
/// a < 1: (c−1)log N/N − log Γ(c)/N + (1/N) log|a(1−a²)^{c−1}/((z−a)^{1−c} z^c)|
///
/// Γ(c) enters through log|Γ(c)| so that c ∈ (−1, 0) is covered.
pub fn attraction_rhs(params: &ProblemParams, n: f64, z: Complex64) -> (f64, f64) {
    let ProblemParams { a, c, beta, .. } = *params;
    let (lg, _) = rug::Float::with_val(64, c).ln_abs_gamma();
    let lg = lg.to_f64();
    let dir = z / z.norm();
    let dlog = |p: f64| (dir / (z - p)).re;
    let lnabs = |p: f64| (z - p).norm().ln();
    if a > 1.0 {
        let konst = (c - 0.5) * n.ln() - lg + 0.5 * (2.0 * PI).ln() + c * (a * a - 1.0).ln() - a.ln();
        let v = konst + (2.0 * c - 1.0) * lnabs(beta) - c * lnabs(a) - c * z.norm().ln();
        let dv = (2.0 * c - 1.0) * dlog(beta) - c * dlog(a) - c * dlog(0.0);
        (v / n, dv / n)
    } else {
        let konst = (c - 1.0) * n.ln() - lg + a.ln() + (c - 1.0) * (1.0 - a * a).ln();
        let v = konst - (1.0 - c) * lnabs(a) - c * z.norm().ln();
        let dv = -(1.0 - c) * dlog(a) - c * dlog(0.0);
        (v / n, dv / n)
    }
}

/// Solution set of the zero-location equation with N = n, traced along polar
/// rays by Newton from the skeleton. Samples inside D_β, outside the band
/// |Re φ_A| < 0.1, or where Newton fails are omitted; the result is an open
/// curve.
pub fn zero_attraction_curve(params: &ProblemParams, n: usize, n_samples: usize) -> Result<PlanarCurve> {
    if params.c == 0.0 {
        return Err(Error::domain("zero-attraction equations need c ≠ 0"));
    }
    let skel = trace_skeleton(params, n_samples)?;
    let nf = n as f64;
    let rad = default_d_beta_radius(params);
    let th = angles(n_samples);
    let solved: Vec<Option<Complex64>> = th
        .par_iter()
        .zip(skel.points.par_iter())
        .map(|(&t, z0)| {
            let mut r = z0.norm();
            let e = Complex64::from_polar(1.0, t);
            for _ in 0..60 {
                let z = e * r;
                let (v, dv) = attraction_rhs(params, nf, z);
                let h = level(params, t, r) - v;
                let dh = level_dr(params, t, r) - dv;
                let step = h / dh;
                if !step.is_finite() {
                    return None;
                }
                r -= step;
                if !(r > 0.0) {
                    return None;
                }
                if step.abs() <= 1e-14 * r {
                    let z = e * r;
                    if (z - params.beta).norm() < rad || level(params, t, r).abs() >= 0.1 {
                        return None;
                    }
                    return Some(z);
                }
            }
            log::warn!("zero-attraction Newton failed on θ = {t}");
            None
        })
        .collect();
    // keep the samples in angular order, starting after the gap around β
    let pts: Vec<Complex64> = solved.into_iter().flatten().collect();
    if pts.is_empty() {
        return Err(Error::Tracing("zero-attraction curve is empty".into()));
    }
    Ok(PlanarCurve::from_points(pts, false))
}
