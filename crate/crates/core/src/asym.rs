//! Strong asymptotics of P_N by region, and order fits against the Lax
//! polynomials.
//!
//! The regions are concrete versions of the qualitative sets of the
//! asymptotic theorems: D_β is a disk about β, U is the band |Re φ_A| < u_band
//! minus a clearance around [0, a], and Ext/Int are the two sides of 𝒮.
//! Every value is kept as a [`LogComplex`] since z^N overflows any f64.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::geometry::{default_d_beta_radius, skeleton_radius, ProblemParams};
use crate::lax::{synthesize_last, InitMode};
use crate::mpnum::{fhat, from_c64, pi, to_c64, weber_d, LogComplex, PrecisionContext};
use crate::{Error, Result};

/// Concrete region sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub d_beta_radius: f64,
    pub u_band: f64,
    pub v0_margin: f64,
}

impl RegionSpec {
    pub fn default_for(params: &ProblemParams) -> Self {
        RegionSpec {
            d_beta_radius: default_d_beta_radius(params),
            u_band: 0.1,
            v0_margin: 0.05,
        }
    }

    /// Positive sizes, and ζ injective on the boundary of D_β (256 samples
    /// pairwise distinct).
    pub fn check(&self, params: &ProblemParams) -> Result<()> {
        if !(self.d_beta_radius > 0.0 && self.u_band > 0.0 && self.v0_margin >= 0.0) {
            return Err(Error::domain(format!("bad region sizes {self:?}")));
        }
        let m = 256;
        let inner = RegionSpec {
            d_beta_radius: self.d_beta_radius * (1.0 + 1e-9),
            ..*self
        };
        let pts: Vec<Complex64> = (0..m)
            .map(|j| {
                let z = params.beta + Complex64::from_polar(self.d_beta_radius, 2.0 * PI * j as f64 / m as f64);
                zeta_map(params, &inner, z)
            })
            .collect::<Result<_>>()?;
        let scale = pts.iter().map(|w| w.norm()).fold(0.0, f64::max);
        for i in 0..m {
            for j in i + 1..m {
                if (pts[i] - pts[j]).norm() <= 1e-9 * scale {
                    return Err(Error::domain(format!(
                        "ζ is not injective on |z−β| = {} (samples {i} and {j})",
                        self.d_beta_radius
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Ext,
    Int,
    UBand,
    DBeta,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Ext => "ext",
            Region::Int => "int",
            Region::UBand => "u_band",
            Region::DBeta => "d_beta",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which family of statements to use: fixed nonzero c, or the c-uniform ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Auto,
    FixedC,
    UniformC,
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Theorem::Auto),
            "fixed_c" | "fixed" => Ok(Theorem::FixedC),
            "uniform_c" | "uniform" => Ok(Theorem::UniformC),
            _ => Err(Error::domain(format!("unknown theorem {s:?} (auto|fixed_c|uniform_c)"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Auto => "auto",
            Theorem::FixedC => "fixed_c",
            Theorem::UniformC => "uniform_c",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPrediction {
    pub value: LogComplex,
    pub region: Region,
    /// the outer term, then the exponentially varying term where there is one
    pub dominant_terms: Vec<LogComplex>,
    /// theorem actually used (never `Auto`)
    pub theorem: Theorem,
    /// claimed decay exponent of the relative error; `None` when faster than any power
    pub error_order: Option<f64>,
}

fn refuse_critical(params: &ProblemParams) -> Result<()> {
    if params.a == 1.0 {
        return Err(Error::OutOfScope(
            "a = 1 is the critical case (Painlevé IV parametrix), not covered".into(),
        ));
    }
    Ok(())
}

/// ζ(z) at working precision: √(2Nφ_A) with ζ′(β) = a√N > 0 for a > 1,
/// −Nφ_A for a < 1.
fn zeta_mp(params: &ProblemParams, z: &Complex, prec: u32) -> Complex {
    let a = params.a_mp(prec);
    let beta = params.beta_mp(prec);
    let n = params.n_mp(prec);
    let zb = Complex::with_val(prec, z - &beta);
    if zb.is_zero() {
        return Complex::new(prec);
    }
    let phi = Complex::with_val(prec, &zb * &a) - Complex::with_val(prec, z / &beta).ln();
    if params.a > 1.0 {
        let s = (Complex::with_val(prec, &phi * &n) * 2u32).sqrt();
        // pick the root with s/(z−β) near +a√N
        let lead = Complex::with_val(prec, &s / &zb);
        if *lead.real() < 0 {
            -s
        } else {
            s
        }
    } else {
        -(phi * n)
    }
}

/// ζ(z) for z in D_β.
pub fn zeta_map(params: &ProblemParams, spec: &RegionSpec, z: Complex64) -> Result<Complex64> {
    refuse_critical(params)?;
    if (z - params.beta).norm() >= spec.d_beta_radius {
        return Err(Error::domain(format!(
            "{z} is outside D_β (radius {})",
            spec.d_beta_radius
        )));
    }
    Ok(to_c64(&zeta_mp(params, &from_c64(128, z), 128)))
}

fn dist_to_segment(z: Complex64, lo: f64, hi: f64) -> f64 {
    let x = z.re.clamp(lo, hi);
    (z - x).norm()
}

/// Region tag of z. Ext/Int come from the polar radius of 𝒮 in the
/// direction of z.
pub fn classify_for_asymptotics(params: &ProblemParams, spec: &RegionSpec, z: Complex64) -> Result<Region> {
    if (z - params.beta).norm() < spec.d_beta_radius {
        return Ok(Region::DBeta);
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Region::Int);
    }
    let re_phi = params.a * (z.re - params.beta) - (z.norm() / params.beta).ln();
    if re_phi.abs() < spec.u_band && dist_to_segment(z, 0.0, params.a.max(params.beta)) > spec.v0_margin {
        return Ok(Region::UBand);
    }
    let r = skeleton_radius(params, z.arg())?;
    Ok(if z.norm() < r { Region::Int } else { Region::Ext })
}

struct Terms {
    prec: u32,
    z: Complex,
    a: Float,
    c: Float,
    n: Float,
    beta: Float,
}

impl Terms {
    fn new(params: &ProblemParams, z: Complex64, prec: u32) -> Self {
        Terms {
            prec,
            z: from_c64(prec, z),
            a: params.a_mp(prec),
            c: params.c_mp(prec),
            n: params.n_mp(prec),
            beta: params.beta_mp(prec),
        }
    }

    fn log(&self, w: Complex) -> Complex {
        w.ln()
    }

    fn cplx(&self, x: &Float) -> Complex {
        Complex::with_val(self.prec, x)
    }

    /// ln Γ(c) with iπ for negative Γ.
    fn ln_gamma_c(&self) -> Complex {
        let (lg, ord) = Float::with_val(self.prec, &self.c).ln_abs_gamma();
        let im = if ord == std::cmp::Ordering::Less {
            pi(self.prec)
        } else {
            Float::new(self.prec)
        };
        Complex::with_val(self.prec, (lg, im))
    }

    fn n_log_z(&self) -> Complex {
        self.log(self.z.clone()) * &self.n
    }

    /// ln of z^N (z/(z−β))^c (a > 1) or z^N (z/(z−a))^c (a < 1).
    fn ext(&self, pole: &Float) -> Complex {
        let ratio = Complex::with_val(self.prec, &self.z / Complex::with_val(self.prec, &self.z - pole));
        self.n_log_z() + self.log(ratio) * &self.c
    }

    /// ln of the Int-region term, a > 1.
    fn int_outer(&self) -> Complex {
        let p = self.prec;
        let zb = Complex::with_val(p, &self.z - &self.beta);
        let za = Complex::with_val(p, &self.z - &self.a);
        let a2m1 = Float::with_val(p, &self.a * &self.a) - 1u32;
        let mut k = Float::with_val(p, self.beta.ln_ref()) * &self.n;
        k += Float::with_val(p, pi(p) * 2u32).ln() / 2u32;
        k += a2m1.ln() * &self.c;
        k -= (Float::with_val(p, 0.5) - &self.c) * Float::with_val(p, self.n.ln_ref());
        k -= Float::with_val(p, self.a.ln_ref());
        let mut v = self.cplx(&k) - self.ln_gamma_c();
        v += Complex::with_val(p, &zb * &self.a) * &self.n;
        v -= self.log(zb.clone());
        v += self.log(Complex::with_val(p, &zb / &za)) * &self.c;
        v + Complex::with_val(p, (0, pi(p)))
    }

    /// ln of the Int-region term, a < 1.
    fn int_inner(&self) -> Complex {
        let p = self.prec;
        let za = Complex::with_val(p, &self.z - &self.a);
        let one_m = Float::with_val(p, 1u32) - Float::with_val(p, &self.a * &self.a);
        let mut k = Float::with_val(p, self.a.ln_ref()) * (Float::with_val(p, &self.n) + 1u32);
        k += one_m.ln() * (Float::with_val(p, &self.c) - 1u32);
        k -= (Float::with_val(p, 1u32) - &self.c) * Float::with_val(p, self.n.ln_ref());
        let mut v = self.cplx(&k) - self.ln_gamma_c();
        v += Complex::with_val(p, &za * &self.a) * &self.n;
        v -= self.log(za);
        v + Complex::with_val(p, (0, pi(p)))
    }

    /// ln of z ζ/(z − pole), with the ζ′(β) limit at z = β.
    fn z_zeta_ratio(&self, params: &ProblemParams, zeta: &Complex, pole: &Float) -> Complex {
        let p = self.prec;
        let zp = Complex::with_val(p, &self.z - pole);
        let zb = Complex::with_val(p, &self.z - &self.beta);
        let r = if zb.is_zero() {
            let d = if params.a > 1.0 {
                Float::with_val(p, self.n.sqrt_ref()) * &self.a
            } else {
                (Float::with_val(p, 1u32) - Float::with_val(p, &self.a * &self.a)) * &self.n / &self.a
            };
            Complex::with_val(p, &self.z * d)
        } else {
            Complex::with_val(p, &self.z * zeta) / zp
        };
        self.log(r)
    }
}

fn resolve_theorem(params: &ProblemParams, region: Region, theorem: Theorem) -> Result<Theorem> {
    let c = params.c;
    let in_uniform = if params.a > 1.0 {
        (-0.5..=0.5).contains(&c)
    } else {
        c > -1.0 && c < 2.0
    };
    match theorem {
        Theorem::Auto => Ok(if in_uniform && c.abs() <= 0.5 && region != Region::Int {
            Theorem::UniformC
        } else {
            Theorem::FixedC
        }),
        Theorem::FixedC => {
            if c > -1.0 {
                Ok(Theorem::FixedC)
            } else {
                Err(Error::domain(format!("fixed-c asymptotics need c > −1, got {c}")))
            }
        }
        Theorem::UniformC => {
            if !in_uniform {
                let range = if params.a > 1.0 { "[−1/2, 1/2]" } else { "(−1, 2)" };
                return Err(Error::domain(format!(
                    "uniform-c asymptotics need c in {range}, got {c}"
                )));
            }
            if region == Region::Int {
                return Err(Error::OutOfScope(
                    "the c-uniform statements give no formula for Int 𝒮 away from U".into(),
                ));
            }
            Ok(Theorem::UniformC)
        }
    }
}

fn error_order(params: &ProblemParams, region: Region, theorem: Theorem) -> Option<f64> {
    let c = params.c;
    let outer = params.a > 1.0;
    match (theorem, outer, region) {
        (Theorem::UniformC, true, Region::DBeta) => Some(0.5f64.min(2.0 * c + 0.5)),
        (Theorem::UniformC, true, _) => Some(c + 0.5),
        (Theorem::UniformC, false, _) => Some(2.0 - c),
        (_, true, Region::Ext) => Some(1.0),
        (_, true, _) => Some(0.5),
        (_, false, Region::Ext) => None,
        (_, false, _) => Some(1.0),
    }
}

/// The asymptotic formula for P_N(z) in the region of z, with N = params.big_n.
pub fn predict(
    params: &ProblemParams,
    spec: &RegionSpec,
    z: Complex64,
    theorem: Theorem,
    ctx: &PrecisionContext,
) -> Result<AsymptoticPrediction> {
    refuse_critical(params)?;
    if params.c == 0.0 {
        return Err(Error::domain(
            "the asymptotic formulas are stated for c ≠ 0 (P_N = z^N at c = 0)",
        ));
    }
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(params.a, 0.0) {
        return Err(Error::Singularity(format!("prediction is singular at {z}")));
    }
    let region = classify_for_asymptotics(params, spec, z)?;
    let theorem = resolve_theorem(params, region, theorem)?;
    let prec = ctx.bits();
    let t = Terms::new(params, z, prec);
    let outer = params.a > 1.0;
    let pole = if outer { t.beta.clone() } else { t.a.clone() };
    let ext = || LogComplex::exp_of(&t.ext(&pole));
    let int = || LogComplex::exp_of(&if outer { t.int_outer() } else { t.int_inner() });
    let (value, dominant_terms) = match region {
        Region::Ext => {
            let e = ext();
            (e.clone(), vec![e])
        }
        Region::Int => {
            let i = int();
            (i.clone(), vec![i])
        }
        Region::UBand => {
            let (e, i) = (ext(), int());
            (e.add(&i), vec![e, i])
        }
        Region::DBeta => {
            let zeta = zeta_mp(params, &t.z, prec);
            let lr = t.z_zeta_ratio(params, &zeta, &pole);
            if outer {
                let d = weber_d(&t.c, &zeta, ctx)?;
                let quarter = Complex::with_val(prec, &zeta * &zeta) / 4u32;
                let w = t.n_log_z() + lr * &t.c + quarter;
                let v = LogComplex::exp_of(&w).mul(&LogComplex::from_cplx(&d));
                (v.clone(), vec![v])
            } else {
                let f = fhat(&t.c, &zeta, ctx)?;
                let first = ext();
                let w = t.n_log_z() + lr * &t.c - &zeta;
                let second = LogComplex::exp_of(&w).mul(&LogComplex::from_cplx(&f)).neg();
                (first.add(&second), vec![first, second])
            }
        }
    };
    Ok(AsymptoticPrediction {
        value,
        region,
        dominant_terms,
        theorem,
        error_order: error_order(params, region, theorem),
    })
}

/// Least-squares slope of ln(err) against ln N, negated.
pub fn fit_order(ns: &[usize], errs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errs)
        .filter(|(_, e)| **e > 0.0 && e.is_finite())
        .map(|(n, e)| ((*n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(-sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZJson {
    pub re: f64,
    pub im: f64,
}

/// One validation run at a fixed point over several N = n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub a: f64,
    pub c: f64,
    pub z: ZJson,
    pub region: Region,
    pub theorem: Theorem,
    #[serde(rename = "N")]
    pub n: Vec<usize>,
    pub rel_err: Vec<f64>,
    /// ||P_N| / |prediction| − 1|
    pub mag_err: Vec<f64>,
    /// |arg(P_N / prediction)|
    pub phase_err: Vec<f64>,
    pub fitted_order: Option<f64>,
    pub expected_order: Option<f64>,
    /// only for faster-than-any-power claims: every error is below ten times
    /// the neglected exponentially small term
    pub superpolynomial: Option<bool>,
    pub phase_coherent: bool,
}

impl ValidationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Compares P_N(z) from the Lax recurrence with [`predict`] for each N in
/// `n_list` (n = N). Contour initialization unless c = 1.
pub fn validate(
    params: &ProblemParams,
    spec: &RegionSpec,
    z: Complex64,
    n_list: &[usize],
    theorem: Theorem,
    ctx: &PrecisionContext,
) -> Result<ValidationReport> {
    let init = if params.c == 1.0 {
        InitMode::Paper
    } else {
        InitMode::Contour
    };
    validate_with(params, spec, z, n_list, theorem, init, ctx)
}

pub fn validate_with(
    params: &ProblemParams,
    spec: &RegionSpec,
    z: Complex64,
    n_list: &[usize],
    theorem: Theorem,
    init: InitMode,
    ctx: &PrecisionContext,
) -> Result<ValidationReport> {
    refuse_critical(params)?;
    if n_list.is_empty() {
        return Err(Error::domain("validate needs at least one N"));
    }
    let per_n: Vec<ProblemParams> = n_list.iter().map(|&n| params.with_n(n as f64)).collect::<Result<_>>()?;
    let regions: Vec<Region> = per_n
        .iter()
        .map(|p| classify_for_asymptotics(p, spec, z))
        .collect::<Result<_>>()?;
    if regions.iter().any(|r| *r != regions[0]) {
        return Err(Error::Protocol(format!(
            "{z} changes region across N = {n_list:?}: {regions:?}"
        )));
    }
    let rows: Vec<(AsymptoticPrediction, f64, f64, f64, f64)> = per_n
        .par_iter()
        .zip(n_list.par_iter())
        .map(|(p, &n)| {
            let pred = predict(p, spec, z, theorem, ctx)?;
            let poly = synthesize_last(p, n, init, ctx)?;
            let truth = poly.evaluate(&from_c64(poly.prec(), z));
            let ratio = truth.div(&pred.value);
            let rel = truth.rel_diff(&pred.value).to_f64();
            let mag = ratio.log_mag.to_f64().exp_m1().abs();
            let phase = ratio.phase.to_f64().abs();
            // size of the neglected term relative to the kept one
            let neglected = if pred.dominant_terms.len() == 1 && pred.region == Region::Ext {
                let t = Terms::new(p, z, ctx.bits());
                let i = LogComplex::exp_of(&if p.a > 1.0 { t.int_outer() } else { t.int_inner() });
                (i.log_mag.to_f64() - pred.value.log_mag.to_f64()).exp()
            } else {
                f64::NAN
            };
            Ok((pred, rel, mag, phase, neglected))
        })
        .collect::<Result<_>>()?;
    let rel_err: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let mag_err: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let phase_err: Vec<f64> = rows.iter().map(|r| r.3).collect();
    let floor = 2f64.powi(-(ctx.bits() as i32) / 2);
    let phase_coherent = mag_err.iter().zip(&phase_err).all(|(m, ph)| *ph <= 10.0 * (m + floor));
    let first = &rows[0].0;
    let expected_order = first.error_order;
    let superpolynomial = if expected_order.is_none() {
        Some(rows.iter().all(|r| r.1 <= 10.0 * r.4 + floor))
    } else {
        None
    };
    Ok(ValidationReport {
        a: params.a,
        c: params.c,
        z: ZJson { re: z.re, im: z.im },
        region: first.region,
        theorem: first.theorem,
        n: n_list.to_vec(),
        fitted_order: fit_order(n_list, &rel_err),
        rel_err,
        mag_err,
        phase_err,
        expected_order,
        superpolynomial,
        phase_coherent,
    })
}
