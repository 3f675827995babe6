use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A sampled oriented curve with cumulative arclength (first entry 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarCurve {
    pub points: Vec<Complex64>,
    pub closed: bool,
    pub cumulative_arclength: Vec<f64>,
}

/// Nearest point of a curve to a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub distance: f64,
    pub point: Complex64,
    /// arclength coordinate of the foot point
    pub arclength: f64,
    pub segment: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Ext,
    Int,
    OnCurve,
}

fn seg_project(p: Complex64, a: Complex64, b: Complex64) -> (f64, Complex64, f64) {
    let d = b - a;
    let l2 = d.norm_sqr();
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p - a) * d.conj()).re / l2).clamp(0.0, 1.0)
    };
    let q = a + d * t;
    ((p - q).norm(), q, t)
}

impl PlanarCurve {
    /// Builds a curve, dropping consecutive duplicate points so arclength
    /// strictly increases.
    pub fn from_points(points: Vec<Complex64>, closed: bool) -> Self {
        let mut pts: Vec<Complex64> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        if closed && pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() == 0.0 {
            pts.pop();
        }
        let mut s = Vec::with_capacity(pts.len());
        let mut acc = 0.0;
        for (i, p) in pts.iter().enumerate() {
            if i > 0 {
                acc += (p - pts[i - 1]).norm();
            }
            s.push(acc);
        }
        PlanarCurve {
            points: pts,
            closed,
            cumulative_arclength: s,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn n_segments(&self) -> usize {
        match (self.closed, self.points.len()) {
            (_, 0) | (_, 1) => 0,
            (true, n) => n,
            (false, n) => n - 1,
        }
    }

    fn segment(&self, i: usize) -> (Complex64, Complex64) {
        let n = self.points.len();
        (self.points[i], self.points[(i + 1) % n])
    }

    /// Total length including the closing segment of a closed curve.
    pub fn total_length(&self) -> f64 {
        let last = self.cumulative_arclength.last().copied().unwrap_or(0.0);
        if self.closed && self.points.len() > 1 {
            last + (self.points[0] - self.points[self.points.len() - 1]).norm()
        } else {
            last
        }
    }

    pub fn max_spacing(&self) -> f64 {
        (0..self.n_segments())
            .map(|i| {
                let (a, b) = self.segment(i);
                (b - a).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn mean_spacing(&self) -> f64 {
        let n = self.n_segments();
        if n == 0 {
            0.0
        } else {
            self.total_length() / n as f64
        }
    }

    /// Winding number of the closed polygon about p.
    pub fn winding_number(&self, p: Complex64) -> i32 {
        let n = self.points.len();
        let mut w = 0;
        for i in 0..n {
            let a = self.points[i] - p;
            let b = self.points[(i + 1) % n] - p;
            if a.im <= 0.0 {
                if b.im > 0.0 && (a.re * b.im - b.re * a.im) > 0.0 {
                    w += 1;
                }
            } else if b.im <= 0.0 && (a.re * b.im - b.re * a.im) < 0.0 {
                w -= 1;
            }
        }
        w
    }

    /// Signed area by the shoelace formula (positive for counterclockwise).
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut s = 0.0;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            s += a.re * b.im - b.re * a.im;
        }
        s / 2.0
    }

    /// Nearest point on the polyline.
    pub fn project(&self, p: Complex64) -> Projection {
        if self.points.len() == 1 {
            return Projection {
                distance: (p - self.points[0]).norm(),
                point: self.points[0],
                arclength: 0.0,
                segment: 0,
            };
        }
        let mut best = Projection {
            distance: f64::INFINITY,
            point: p,
            arclength: 0.0,
            segment: 0,
        };
        for i in 0..self.n_segments() {
            let (a, b) = self.segment(i);
            let (d, q, t) = seg_project(p, a, b);
            if d < best.distance {
                let s0 = self.cumulative_arclength[i];
                best = Projection {
                    distance: d,
                    point: q,
                    arclength: s0 + t * (b - a).norm(),
                    segment: i,
                };
            }
        }
        best
    }

    pub fn distance(&self, p: Complex64) -> f64 {
        self.project(p).distance
    }

    /// Point-in-polygon with an on-curve band of width `band`.
    pub fn classify_with_band(&self, p: Complex64, band: f64) -> PointClass {
        if self.distance(p) <= band {
            PointClass::OnCurve
        } else if self.winding_number(p) != 0 {
            PointClass::Int
        } else {
            PointClass::Ext
        }
    }

    /// CSV with columns x, y, arclength after a `# curve ...` header line.
    pub fn write_csv<W: Write>(&self, mut w: W, header: &str) -> Result<()> {
        writeln!(w, "# curve {header}")?;
        writeln!(w, "x,y,arclength")?;
        for (p, s) in self.points.iter().zip(&self.cumulative_arclength) {
            writeln!(w, "{},{},{}", p.re, p.im, s)?;
        }
        if self.closed && !self.points.is_empty() {
            let p = self.points[0];
            writeln!(w, "{},{},{}", p.re, p.im, self.total_length())?;
        }
        Ok(())
    }
}

/// Symmetric Hausdorff distance between two sampled curves, measuring
/// sample-to-polyline distances in both directions.
pub fn hausdorff(a: &PlanarCurve, b: &PlanarCurve) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("hausdorff needs non-empty curves"));
    }
    let directed =
        |x: &PlanarCurve, y: &PlanarCurve| x.points.par_iter().map(|p| y.distance(*p)).reduce(|| 0.0, f64::max);
    Ok(directed(a, b).max(directed(b, a)))
}

/// A density per unit arclength sampled on a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeasure {
    pub curve: PlanarCurve,
    pub density: Vec<f64>,
}

impl CurveMeasure {
    /// Trapezoidal total mass along the polyline.
    pub fn total_mass(&self) -> f64 {
        self.cumulative_mass().last().copied().unwrap_or(0.0)
    }

    /// Cumulative trapezoidal mass at each sample; for a closed curve one extra
    /// entry holds the mass after the closing segment.
    pub fn cumulative_mass(&self) -> Vec<f64> {
        let pts = &self.curve.points;
        let n = pts.len();
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        out.push(0.0);
        let segs = if self.curve.closed { n } else { n.saturating_sub(1) };
        for i in 0..segs {
            let j = (i + 1) % n;
            acc += 0.5 * (self.density[i] + self.density[j]) * (pts[j] - pts[i]).norm();
            out.push(acc);
        }
        out
    }

    /// Mass of the arc [0, s] in arclength coordinates, linear within segments.
    pub fn cdf_at(&self, cum: &[f64], s: f64) -> f64 {
        let arc = &self.curve.cumulative_arclength;
        let n = arc.len();
        let total_len = self.curve.total_length();
        let s = s.clamp(0.0, total_len);
        let i = match arc.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => return cum[i],
            Err(i) => i - 1,
        };
        let s0 = arc[i];
        let s1 = if i + 1 < n { arc[i + 1] } else { total_len };
        let m0 = cum[i];
        let m1 = cum[(i + 1).min(cum.len() - 1)];
        if s1 > s0 {
            m0 + (m1 - m0) * (s - s0) / (s1 - s0)
        } else {
            m0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(r: f64, n: usize) -> PlanarCurve {
        let pts = (0..n)
            .map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64))
            .collect();
        PlanarCurve::from_points(pts, true)
    }

    #[test]
    fn circle_metadata() {
        let c = circle(1.0, 1000);
        assert!((c.total_length() - 2.0 * PI).abs() < 1e-4);
        assert_eq!(c.winding_number(Complex64::new(0.1, 0.2)), 1);
        assert_eq!(c.winding_number(Complex64::new(1.5, 0.0)), 0);
        assert!((c.signed_area() - PI).abs() < 1e-4);
        assert!(c.cumulative_arclength.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn hausdorff_examples() {
        let a = circle(1.0, 2000);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        let b = circle(1.1, 2000);
        let d = hausdorff(&a, &b).unwrap();
        assert!((d - 0.1).abs() <= b.max_spacing());
    }

    #[test]
    fn classification_band() {
        let c = circle(1.0, 500);
        assert_eq!(c.classify_with_band(Complex64::new(0.0, 0.0), 0.01), PointClass::Int);
        assert_eq!(c.classify_with_band(Complex64::new(2.0, 0.0), 0.01), PointClass::Ext);
        assert_eq!(
            c.classify_with_band(Complex64::new(1.0, 0.0), 0.01),
            PointClass::OnCurve
        );
    }

    #[test]
    fn uniform_measure_cdf() {
        let c = circle(1.0, 400);
        let n = c.len();
        let m = CurveMeasure {
            curve: c.clone(),
            density: vec![1.0 / c.total_length(); n],
        };
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
        let cum = m.cumulative_mass();
        assert!((m.cdf_at(&cum, c.total_length() / 2.0) - 0.5).abs() < 1e-9);
    }
}
