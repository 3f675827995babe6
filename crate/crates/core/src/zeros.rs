//! Zeros of high-degree polynomials by Aberth–Ehrlich iteration, and the
//! statistics that compare them with the skeleton and its measure.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::csv::fmt_real;
use crate::geometry::{CurveMeasure, PlanarCurve};
use crate::lax::ScaledPolynomial;
use crate::mpnum::{cabs, to_c64};
use crate::{Error, PrecisionContext, Result};

pub const MAX_SWEEPS: usize = 500;

/// Roots of a monic polynomial with their a-posteriori Newton corrections.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// max |p(z)/p′(z)| over the roots at exit
    pub residual_bound: Float,
    /// groups of root indices closer than 2^{−bits/4}; singletons omitted
    pub clusters: Vec<Vec<usize>>,
    pub converged: Vec<bool>,
    pub sweeps: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.roots.iter().map(to_c64).collect()
    }

    /// Multiplicity of root i (1 unless it belongs to a cluster).
    pub fn multiplicity(&self, i: usize) -> usize {
        self.clusters.iter().find(|c| c.contains(&i)).map_or(1, |c| c.len())
    }

    /// Relative residuals of the sum and product identities:
    /// Σ z_i = −c_{d−1} and Π z_i = (−1)^d c_0.
    pub fn vieta_residuals(&self, poly: &ScaledPolynomial) -> (f64, f64) {
        let prec = self.roots[0].prec().0;
        let d = poly.degree;
        let mut sum = Complex::new(prec);
        let mut abs_sum = Float::new(prec);
        let mut prod = Complex::with_val(prec, 1u32);
        for z in &self.roots {
            sum += z;
            abs_sum += cabs(z);
            prod *= z;
        }
        let lead = Complex::with_val(prec, &poly.coeffs[d - 1]);
        let s_res = cabs(&(sum + lead)) / abs_sum.max(&Float::with_val(prec, 1u32));
        let mut c0 = Complex::with_val(prec, &poly.coeffs[0]);
        if d % 2 == 1 {
            c0 = -c0;
        }
        let scale = Float::with_val(prec, cabs(&prod).max(&cabs(&c0)));
        let p_res = if scale.is_zero() {
            Float::new(prec)
        } else {
            cabs(&(prod - c0)) / scale
        };
        (s_res.to_f64(), p_res.to_f64())
    }
}

struct Eval {
    p: Complex,
    dp: Complex,
    /// Σ|c_k||z|^k
    mag: Float,
}

fn eval(coeffs: &[Complex], z: &Complex) -> Eval {
    let prec = z.prec().0;
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    let mut mag = Float::new(64);
    let az = Float::with_val(64, z.abs_ref());
    for c in coeffs.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += c;
        mag *= &az;
        mag += Float::with_val(64, c.abs_ref());
    }
    Eval { p, dp, mag }
}

/// Aberth–Ehrlich iteration on all roots at once.
///
/// Starts on the circle of radius (1 + max|c_k|)^{1/d} at golden-angle
/// spacing. A root stops moving once its correction is below 2^{−bits/2}
/// (relative to max(1, |z|)) or |p(z)| reaches the rounding floor
/// 8u·Σ|c_k||z|^k. Roots closer than 2^{−bits/4} are reported as a cluster.
pub fn find_roots(poly: &ScaledPolynomial, ctx: &PrecisionContext) -> Result<RootSet> {
    let d = poly.degree;
    if d < 1 {
        return Err(Error::domain("find_roots needs degree >= 1"));
    }
    let prec = ctx.bits();
    let one = Complex::with_val(prec, 1u32);
    if Complex::with_val(prec, &poly.coeffs[d] - &one).abs().real().to_f64() != 0.0 {
        return Err(Error::domain("find_roots needs a monic polynomial"));
    }
    let coeffs: Vec<Complex> = poly.coeffs.iter().map(|c| Complex::with_val(prec, c)).collect();

    let maxc = coeffs[..d]
        .iter()
        .map(|c| Float::with_val(64, c.abs_ref()))
        .fold(Float::new(64), |m, x| m.max(&x));
    let radius = Float::with_val(64, maxc + 1u32).ln() / d as u32;
    let radius = radius.exp().to_f64();
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let th = 0.25 + golden * k as f64;
            Complex::with_val(prec, (radius * th.cos(), radius * th.sin()))
        })
        .collect();

    let corr_tol = Float::with_val(prec, 1u32) >> (prec as i32 / 2);
    let floor = Float::with_val(64, 8u32) >> prec as i32;
    let mut done = vec![false; d];
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && done.iter().any(|x| !x) {
        sweeps += 1;
        let updates: Vec<Option<(Complex, bool)>> = (0..d)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return None;
                }
                let zi = &z[i];
                let e = eval(&coeffs, zi);
                if Float::with_val(64, e.p.abs_ref()) <= Float::with_val(64, &e.mag * &floor) {
                    return Some((zi.clone(), true));
                }
                let newton = Complex::with_val(prec, &e.p / &e.dp);
                let mut s = Complex::new(prec);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        s += Complex::with_val(prec, zi - zj).recip();
                    }
                }
                let denom = Complex::with_val(prec, 1u32) - Complex::with_val(prec, &newton * &s);
                let w = newton / denom;
                let scale = Float::with_val(prec, zi.abs_ref()).max(&Float::with_val(prec, 1u32));
                let small = Float::with_val(prec, w.abs_ref()) < Float::with_val(prec, &corr_tol * &scale);
                Some((Complex::with_val(prec, zi - &w), small))
            })
            .collect();
        for (i, u) in updates.into_iter().enumerate() {
            if let Some((zi, conv)) = u {
                z[i] = zi;
                done[i] = conv;
            }
        }
    }

    let residual_bound = z
        .par_iter()
        .map(|zi| {
            let e = eval(&coeffs, zi);
            if e.dp.is_zero() {
                Float::new(prec)
            } else {
                Float::with_val(prec, (e.p / e.dp).abs().real())
            }
        })
        .reduce(|| Float::new(prec), |a, b| a.max(&b));

    let set = RootSet {
        clusters: cluster(&z, prec),
        roots: z,
        residual_bound,
        converged: done.clone(),
        sweeps,
    };
    let unconverged = done.iter().filter(|x| !**x).count();
    if unconverged > 0 {
        return Err(Error::RootsNotConverged {
            iterations: sweeps,
            unconverged,
            partial: Box::new(set),
        });
    }
    Ok(set)
}

fn cluster(z: &[Complex], prec: u32) -> Vec<Vec<usize>> {
    let tol = Float::with_val(prec, 1u32) >> (prec as i32 / 4);
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if Float::with_val(prec, Complex::with_val(prec, &z[i] - &z[j]).abs_ref()) < tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSide {
    Ext,
    Int,
    Excluded,
}

impl RootSide {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootSide::Ext => "ext",
            RootSide::Int => "int",
            RootSide::Excluded => "excluded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub z: Complex64,
    pub dist_to_curve: f64,
    pub side: RootSide,
}

/// Distances of the zeros to a curve and their side of the skeleton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroStats {
    pub max_dist: f64,
    pub median_dist: f64,
    pub frac_ext: f64,
    pub frac_int: f64,
    pub rows: Vec<RootRow>,
}

impl ZeroStats {
    /// Roots CSV: re, im, dist_to_curve, side.
    pub fn write_csv<W: Write>(&self, mut w: W, digits: Option<usize>) -> Result<()> {
        writeln!(w, "re,im,dist_to_curve,side")?;
        for r in &self.rows {
            match digits {
                Some(d) => writeln!(
                    w,
                    "{:.*e},{:.*e},{:.*e},{}",
                    d.saturating_sub(1),
                    r.z.re,
                    d.saturating_sub(1),
                    r.z.im,
                    d.saturating_sub(1),
                    r.dist_to_curve,
                    r.side.as_str()
                )?,
                None => writeln!(w, "{},{},{},{}", r.z.re, r.z.im, r.dist_to_curve, r.side.as_str())?,
            }
        }
        Ok(())
    }
}

/// Roots CSV with the extended-precision coordinates of `roots` in place of
/// the f64 copies held by `stats`. Rows must come from the same root set.
pub fn write_roots_csv<W: Write>(mut w: W, roots: &RootSet, stats: &ZeroStats, digits: Option<usize>) -> Result<()> {
    if roots.len() != stats.rows.len() {
        return Err(Error::domain(format!(
            "{} roots but {} stat rows",
            roots.len(),
            stats.rows.len()
        )));
    }
    writeln!(w, "re,im,dist_to_curve,side")?;
    for (z, r) in roots.roots.iter().zip(&stats.rows) {
        let dist = match digits {
            Some(d) => format!("{:.*e}", d.saturating_sub(1), r.dist_to_curve),
            None => r.dist_to_curve.to_string(),
        };
        writeln!(
            w,
            "{},{},{dist},{}",
            fmt_real(z.real(), digits),
            fmt_real(z.imag(), digits),
            r.side.as_str()
        )?;
    }
    Ok(())
}

/// Distance statistics of the roots outside the disk |z − exclude_near| <
/// exclude_radius, with sides taken against the closed skeleton.
pub fn zero_curve_stats(
    roots: &RootSet,
    curve: &PlanarCurve,
    skeleton: &PlanarCurve,
    exclude_near: Complex64,
    exclude_radius: f64,
) -> ZeroStats {
    let rows: Vec<RootRow> = roots
        .to_c64()
        .into_par_iter()
        .map(|z| {
            let dist_to_curve = curve.distance(z);
            let side = if (z - exclude_near).norm() < exclude_radius {
                RootSide::Excluded
            } else if skeleton.winding_number(z) != 0 {
                RootSide::Int
            } else {
                RootSide::Ext
            };
            RootRow { z, dist_to_curve, side }
        })
        .collect();
    let mut kept: Vec<f64> = rows
        .iter()
        .filter(|r| r.side != RootSide::Excluded)
        .map(|r| r.dist_to_curve)
        .collect();
    kept.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = kept.len();
    let (max_dist, median_dist) = if m == 0 {
        (0.0, 0.0)
    } else if m % 2 == 1 {
        (kept[m - 1], kept[m / 2])
    } else {
        (kept[m - 1], 0.5 * (kept[m / 2 - 1] + kept[m / 2]))
    };
    let count = |s: RootSide| rows.iter().filter(|r| r.side == s).count() as f64;
    let denom = (m as f64).max(1.0);
    ZeroStats {
        max_dist,
        median_dist,
        frac_ext: count(RootSide::Ext) / denom,
        frac_int: count(RootSide::Int) / denom,
        rows,
    }
}

/// Kolmogorov–Smirnov distance along arclength between the projected roots
/// and the normalized measure, with arclength measured from the curve's
/// first sample.
pub fn empirical_vs_mu(roots: &[Complex64], measure: &CurveMeasure) -> f64 {
    if roots.is_empty() {
        return 1.0;
    }
    let cum = measure.cumulative_mass();
    let total = *cum.last().unwrap();
    let mut s: Vec<f64> = roots.par_iter().map(|z| measure.curve.project(*z).arclength).collect();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    let mut ks: f64 = 0.0;
    for (i, si) in s.iter().enumerate() {
        let f = measure.cdf_at(&cum, *si) / total;
        ks = ks.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    ks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(f64, f64)], prec: u32) -> ScaledPolynomial {
        ScaledPolynomial {
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|c| Complex::with_val(prec, *c)).collect(),
            log_scale: Float::new(prec),
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = poly(&[(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], 256);
        let r = find_roots(&p, &PrecisionContext::default()).unwrap();
        let mut want: Vec<Complex64> = (0..3)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0))
            .collect();
        for z in r.to_c64() {
            let (i, d) = want
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - z).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(d < 1e-15);
            want.remove(i);
        }
        assert!(r.clusters.is_empty());
        let (s, p_) = r.vieta_residuals(&p);
        assert!(s < 1e-60 && p_ < 1e-60);
    }

    #[test]
    fn double_root_is_clustered() {
        // (z−0.5)²(z+1) = z³ − 0.75 z + 0.25
        let p = poly(&[(0.25, 0.0), (-0.75, 0.0), (0.0, 0.0), (1.0, 0.0)], 256);
        let r = find_roots(&p, &PrecisionContext::default()).unwrap();
        assert_eq!(r.clusters.len(), 1);
        let c = &r.clusters[0];
        assert_eq!(c.len(), 2);
        for &i in c {
            assert!((to_c64(&r.roots[i]) - Complex64::new(0.5, 0.0)).norm() < 1e-30);
            assert_eq!(r.multiplicity(i), 2);
        }
        let single = (0..3).find(|i| !c.contains(i)).unwrap();
        assert!((to_c64(&r.roots[single]) + 1.0).norm() < 1e-60);
    }

    #[test]
    fn rejects_constant() {
        let p = poly(&[(1.0, 0.0)], 128);
        assert!(find_roots(&p, &PrecisionContext::default()).is_err());
    }

    #[test]
    fn stats_on_samples() {
        let circle: Vec<Complex64> = (0..400)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 400.0))
            .collect();
        let curve = PlanarCurve::from_points(circle.clone(), true);
        let set = RootSet {
            roots: circle
                .iter()
                .step_by(10)
                .map(|z| Complex::with_val(128, (z.re, z.im)))
                .collect(),
            residual_bound: Float::new(128),
            clusters: vec![],
            converged: vec![true; 40],
            sweeps: 0,
        };
        let st = zero_curve_stats(&set, &curve, &curve, Complex64::new(5.0, 0.0), 0.1);
        assert!(st.max_dist <= curve.max_spacing());
        let inner = RootSet {
            roots: vec![
                Complex::with_val(128, (0.5, 0.0)),
                Complex::with_val(128, (2.0, 0.0)),
                Complex::with_val(128, (1.0, 0.01)),
            ],
            residual_bound: Float::new(128),
            clusters: vec![],
            converged: vec![true; 3],
            sweeps: 0,
        };
        let st = zero_curve_stats(&inner, &curve, &curve, Complex64::new(1.0, 0.0), 0.05);
        assert_eq!(st.rows[2].side, RootSide::Excluded);
        assert_eq!(st.frac_int, 0.5);
        assert_eq!(st.frac_ext, 0.5);

        let mut buf = Vec::new();
        write_roots_csv(&mut buf, &inner, &st, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 4);
        assert!(rows[3].ends_with(",excluded"));
        let re = crate::csv::parse_real(rows[1].split(',').next().unwrap(), 128).unwrap();
        assert_eq!(re, 0.5);
    }

    #[test]
    fn ks_of_quantiles_is_small() {
        let pts: Vec<Complex64> = (0..2000)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 2000.0))
            .collect();
        let curve = PlanarCurve::from_points(pts.clone(), true);
        // density ∝ 1 + 0.5 cos θ
        let density: Vec<f64> = pts.iter().map(|z| (1.0 + 0.5 * z.arg().cos()) / (2.0 * PI)).collect();
        let m = CurveMeasure {
            curve: curve.clone(),
            density,
        };
        let n = 100;
        let cum = m.cumulative_mass();
        let total = *cum.last().unwrap();
        let mut roots = Vec::new();
        let mut j = 0;
        for i in 0..n {
            let target = (i as f64 + 0.5) / n as f64 * total;
            while cum[j + 1] < target {
                j += 1;
            }
            let t = (target - cum[j]) / (cum[j + 1] - cum[j]);
            let a = pts[j];
            let b = pts[(j + 1) % pts.len()];
            roots.push(a + (b - a) * t);
        }
        let ks = empirical_vs_mu(&roots, &m);
        assert!(ks <= 1.0 / n as f64 + 2.0 * curve.max_spacing(), "{ks}");
        let uniform: Vec<Complex64> = pts.iter().step_by(20).copied().collect();
        // sup |sin θ|/(4π) ≈ 0.0796
        assert!(empirical_vs_mu(&uniform, &m) > 0.07);
    }
}
