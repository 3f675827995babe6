//! Ground truth from moments: m[j][k] = ∫ z^j z̄^k |z−a|^{2c} e^{−N|z|²} dA.
//!
//! Integer c expands |z−a|^{2c} binomially into Gaussian moments, so the table
//! is exact up to rounding. Other c use a product rule in polar coordinates
//! centred at a, where |z−a|^{2c} = ρ^{2c} is a pure endpoint power: tanh-sinh
//! in ρ, trapezoid in θ.

use std::f64::consts::{LN_2, PI};
use std::io::Write;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::csv::fmt_real;
use crate::lax::ScaledPolynomial;
use crate::mpnum::{pi, PrecisionContext};
use crate::{Error, ProblemParams, Result};

pub const MAX_SIZE: usize = 64;

/// Precision of the quadrature sums; the documented accuracy target is 1e−10.
const QUAD_BITS: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMode {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub size: usize,
    pub mode: MomentMode,
    /// entries[j][k] = ⟨z^j, z^k⟩
    pub entries: Vec<Vec<Complex>>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    re: Number,
    im: Number,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    size: usize,
    mode: MomentMode,
    entries: Vec<Vec<JsonEntry>>,
}

fn to_number(x: &Float) -> Result<Number> {
    fmt_real(x, None)
        .parse::<Number>()
        .map_err(|e| Error::domain(format!("cannot write {x} as JSON: {e}")))
}

impl MomentTable {
    /// ⟨p, q⟩ = Σ p_j conj(q_k) m[j][k].
    pub fn inner(&self, p: &[Complex], q: &[Complex]) -> Complex {
        let prec = self.entries[0][0].prec().0;
        let mut s = Complex::new(prec);
        for (j, pj) in p.iter().enumerate() {
            for (k, qk) in q.iter().enumerate() {
                if pj.is_zero() || qk.is_zero() {
                    continue;
                }
                let qc = Complex::with_val(prec, qk.conj_ref());
                s += Complex::with_val(prec, pj * &self.entries[j][k]) * qc;
            }
        }
        s
    }

    /// Largest |m[j][k] − conj(m[k][j])| relative to the diagonal scale.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.size {
            for k in 0..self.size {
                let prec = self.entries[j][k].prec().0;
                let d = Complex::with_val(
                    prec,
                    &self.entries[j][k] - Complex::with_val(prec, self.entries[k][j].conj_ref()),
                );
                let scale = (self.entries[j][j].real().to_f64() * self.entries[k][k].real().to_f64()).sqrt();
                worst = worst.max(d.abs().real().to_f64() / scale);
            }
        }
        worst
    }

    pub fn to_json(&self) -> Result<String> {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        Ok(JsonEntry {
                            re: to_number(v.real())?,
                            im: to_number(v.imag())?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let t = JsonTable {
            size: self.size,
            mode: self.mode,
            entries,
        };
        Ok(serde_json::to_string_pretty(&t)?)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.to_json()?)?;
        Ok(())
    }

    pub fn from_json(s: &str, prec: u32) -> Result<Self> {
        let t: JsonTable = serde_json::from_str(s)?;
        let parse = |n: &Number| crate::csv::parse_real(&n.to_string(), prec);
        let entries = t
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(Complex::with_val(prec, (parse(&e.re)?, parse(&e.im)?))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != t.size || entries.iter().any(|r| r.len() != t.size) {
            return Err(Error::domain("moment table shape does not match its size"));
        }
        Ok(MomentTable {
            size: t.size,
            mode: t.mode,
            entries,
        })
    }
}

/// ∫ z^j z̄^k e^{−N|z|²} dA = π δ_{jk} k!/N^{k+1}.
pub fn gaussian_moment(j: usize, k: usize, big_n: &Float) -> Complex {
    let prec = big_n.prec();
    if j != k {
        return Complex::new(prec);
    }
    let mut f = Float::with_val(prec, Float::factorial(k as u32));
    f *= pi(prec);
    f /= Float::with_val(prec, big_n.pow(k as u32 + 1));
    Complex::with_val(prec, f)
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn integer_charge(c: f64) -> Option<u32> {
    (c >= 0.0 && c.fract() == 0.0 && c <= 64.0).then_some(c as u32)
}

/// Moment table of the given size at the precision of `ctx`.
pub fn perturbed_moments(params: &ProblemParams, size: usize, ctx: &PrecisionContext) -> Result<MomentTable> {
    if size == 0 || size > MAX_SIZE {
        return Err(Error::domain(format!(
            "moment table size must be in 1..={MAX_SIZE}, got {size}"
        )));
    }
    let table = match integer_charge(params.c) {
        Some(c) => closed_form(params, c, size, ctx.bits()),
        None => quadrature(params, size, ctx.bits(), 1)?,
    };
    let pivots = cholesky(&table.entries, size)?;
    debug_assert_eq!(pivots.len(), size);
    Ok(table)
}

fn closed_form(params: &ProblemParams, c: u32, size: usize, prec: u32) -> MomentTable {
    let big_n = params.n_mp(prec);
    let neg_a = -params.a_mp(prec);
    // (z−a)^c = Σ_p C(c,p) (−a)^{c−p} z^p
    let coef: Vec<Float> = (0..=c)
        .map(|p| {
            let b = Float::with_val(prec, binomial(c, p));
            b * Float::with_val(prec, (&neg_a).pow(c - p))
        })
        .collect();
    let entries = (0..size)
        .into_par_iter()
        .map(|j| {
            (0..size)
                .map(|k| {
                    let mut s = Complex::new(prec);
                    for p in 0..=c as usize {
                        for q in 0..=c as usize {
                            if j + p != k + q {
                                continue;
                            }
                            let g = gaussian_moment(j + p, k + q, &big_n);
                            s += g * Float::with_val(prec, &coef[p] * &coef[q]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    MomentTable {
        size,
        mode: MomentMode::ClosedForm,
        entries,
    }
}

/// Quadrature table; `refine` scales both node counts (1 = default).
pub fn quadrature_moments(params: &ProblemParams, size: usize, prec: u32, refine: usize) -> Result<MomentTable> {
    if size == 0 || size > MAX_SIZE {
        return Err(Error::domain(format!(
            "moment table size must be in 1..={MAX_SIZE}, got {size}"
        )));
    }
    quadrature(params, size, prec, refine.max(1))
}

fn quadrature(params: &ProblemParams, size: usize, out_prec: u32, refine: usize) -> Result<MomentTable> {
    let qp = QUAD_BITS;
    let (a, c, big_n) = (params.a, params.c, params.big_n);
    // radius about the origin beyond which |z|^{2(size−1)} e^{−N|z|²} is below 2^{−64−size} of its peak
    let r0 = ((64.0 + size as f64) * LN_2 / big_n).sqrt() + (2.0 * size as f64 / big_n).sqrt();
    let rmax = r0 + a;

    // tanh-sinh in ρ on [0, rmax]
    let h = (1.0 / (rmax * PI * big_n.sqrt())).min(1.0 / 16.0) / refine as f64;
    let endpoint = (2.0 * c + 2.0).min(1.0);
    let tmax = ((qp as f64 * LN_2) / (PI * endpoint)).asinh() + 0.5;
    let nr = (tmax / h).ceil() as i64;

    let m_ang = {
        let m = 32.0 + 2.0 * (2.0 * big_n * a * rmax + 2.0 * size as f64);
        ((m as usize).div_ceil(8) * 8) * refine
    };

    let af = Float::with_val(qp, a);
    let nf = Float::with_val(qp, big_n);
    let two_c1 = Float::with_val(qp, 2.0 * c + 1.0);
    let rm = Float::with_val(qp, rmax);
    let hp = Float::with_val(qp, h);
    let half_pi = Float::with_val(qp, pi(qp) / 2u32);
    let dtheta = Float::with_val(qp, pi(qp) * 2u32) / m_ang as u32;
    let angles: Vec<Complex> = (0..m_ang)
        .map(|i| {
            let th = Float::with_val(qp, &dtheta * i as u32);
            Complex::with_val(qp, (th.clone().cos(), th.sin()))
        })
        .collect();

    let zero_mat = || vec![vec![Complex::new(qp); size]; size];
    let acc = (-nr..=nr)
        .into_par_iter()
        .map(|i| {
            let t = Float::with_val(qp, &hp * i as i32);
            let u = Float::with_val(qp, t.sinh_ref()) * &half_pi;
            let e = Float::with_val(qp, -Float::with_val(qp, &u * 2u32)).exp();
            let one_e = Float::with_val(qp, &e + 1u32);
            let rho = Float::with_val(qp, &rm / &one_e);
            let mut w = Float::with_val(qp, &rm * 2u32) * &e;
            w *= Float::with_val(qp, t.cosh_ref()) * &half_pi;
            w /= Float::with_val(qp, one_e.square_ref());
            w *= &hp;
            let mut m = zero_mat();
            if rho.is_zero() || w.is_zero() {
                return m;
            }
            // ρ^{2c+1} from the weight and the Jacobian
            w *= (Float::with_val(qp, rho.ln_ref()) * &two_c1).exp();
            w *= &dtheta;
            let mut zp = vec![Complex::new(qp); size];
            for dir in &angles {
                let z = Complex::with_val(qp, dir * &rho) + &af;
                let g = Float::with_val(qp, -Float::with_val(qp, z.norm_ref()) * &nf).exp() * &w;
                if g.is_zero() {
                    continue;
                }
                zp[0] = Complex::with_val(qp, (1u32, 0u32));
                for j in 1..size {
                    zp[j] = Complex::with_val(qp, &zp[j - 1] * &z);
                }
                for j in 0..size {
                    let zjg = Complex::with_val(qp, &zp[j] * &g);
                    for k in j..size {
                        m[j][k] += Complex::with_val(qp, zp[k].conj_ref()) * &zjg;
                    }
                }
            }
            m
        })
        .reduce(zero_mat, |mut x, y| {
            for (rx, ry) in x.iter_mut().zip(y) {
                for (vx, vy) in rx.iter_mut().zip(ry) {
                    *vx += vy;
                }
            }
            x
        });

    let mut entries = vec![vec![Complex::new(out_prec); size]; size];
    for j in 0..size {
        for k in j..size {
            entries[j][k] = Complex::with_val(out_prec, &acc[j][k]);
            entries[k][j] = Complex::with_val(out_prec, acc[j][k].conj_ref());
        }
        // exact symmetry puts the diagonal on the real axis
        entries[j][j] = Complex::with_val(out_prec, acc[j][j].real());
    }
    Ok(MomentTable {
        size,
        mode: MomentMode::Quadrature,
        entries,
    })
}

/// Lower Cholesky factor of the Hermitian matrix g, G = L L^*.
fn cholesky(g: &[Vec<Complex>], n: usize) -> Result<Vec<Vec<Complex>>> {
    let prec = g[0][0].prec().0;
    let mut l = vec![vec![Complex::new(prec); n]; n];
    for j in 0..n {
        let mut d = Float::with_val(prec, g[j][j].real());
        for ljk in &l[j][..j] {
            d -= Float::with_val(prec, ljk.norm_ref());
        }
        let scale = g[j][j].real().to_f64().abs();
        // a pivot this small relative to its diagonal has lost all digits
        let lost = d.to_f64() <= scale * 2f64.powi(-(prec as i32) + 16);
        if d <= 0 || lost {
            return Err(Error::Precision(format!(
                "Gram pivot {j} lost ({:.3e} against diagonal {scale:.3e}); raise mantissa_bits",
                d.to_f64()
            )));
        }
        let ljj = d.sqrt();
        for i in j + 1..n {
            let mut s = Complex::with_val(prec, &g[i][j]);
            for (ljk, lik) in l[j][..j].iter().zip(&l[i][..j]) {
                s -= Complex::with_val(prec, ljk.conj_ref()) * lik;
            }
            l[i][j] = s / &ljj;
        }
        l[j][j] = Complex::with_val(prec, ljj);
    }
    Ok(l)
}

/// Monic orthogonal P_0..P_{n_max} and norms h_n = ⟨P_n, P_n⟩.
pub fn gram_schmidt(moments: &MomentTable, n_max: usize) -> Result<(Vec<ScaledPolynomial>, Vec<Float>)> {
    if n_max >= moments.size {
        return Err(Error::domain(format!(
            "gram_schmidt needs n_max < table size ({} >= {})",
            n_max, moments.size
        )));
    }
    let n = n_max + 1;
    let l = cholesky(&moments.entries, n)?;
    let prec = moments.entries[0][0].prec().0;
    let mut polys = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    for deg in 0..n {
        // row deg of L^{-1} divided by its last entry: y^T L ∝ e_deg^T with y_deg = 1
        let mut y = vec![Complex::new(prec); deg + 1];
        y[deg] = Complex::with_val(prec, 1u32);
        for k in (0..deg).rev() {
            let mut s = Complex::new(prec);
            for j in k + 1..=deg {
                s -= Complex::with_val(prec, &l[j][k] * &y[j]);
            }
            y[k] = s / &l[k][k];
        }
        norms.push(Float::with_val(prec, l[deg][deg].real().square_ref()));
        polys.push(ScaledPolynomial {
            degree: deg,
            coeffs: y,
            log_scale: Float::new(prec),
        });
    }
    Ok((polys, norms))
}
