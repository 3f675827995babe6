//! Coefficient recurrence for the monic orthogonal polynomials.
//!
//! The state (a_n, b_n, α_n, β_n, γ_n, η_n, c_n) collects expansion
//! coefficients of the Riemann–Hilbert solution at 0, a and ∞. One step maps
//! it to n+1; the polynomials follow from the first row of the transfer
//! matrix M_n(z) = [[z + a_{n+1} − a_n, −b_n], [c_{n+1}, 1]]:
//!
//! P_{n+1} = (z + a_{n+1} − a_n) P_n − b_n Q_{n−1},   Q_n = c_{n+1} P_n + Q_{n−1}.
//!
//! The forward recurrence loses a couple of bits per step, so synthesis runs
//! with 3 guard bits per degree and rounds back at the end.

use std::f64::consts::LN_2;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::csv::{fmt_real, header_line, parse_header, parse_real};
use crate::mpnum::{contour_quadrature_tol, gamma, pi, Circle, LogComplex};
use crate::{oracle, Error, PrecisionContext, ProblemParams, Result};

/// Guard bits added per recurrence step.
pub const GUARD_BITS_PER_STEP: u32 = 3;

/// Recurrence state at step n.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffState {
    pub n: usize,
    pub a_n: Float,
    pub b_n: Float,
    pub alpha_n: Float,
    pub beta_n: Float,
    pub gamma_n: Float,
    pub eta_n: Float,
    /// leading coefficient of Q_{n−1}; 0 at n = 0
    pub c_n: Float,
}

impl CoeffState {
    pub fn prec(&self) -> u32 {
        self.a_n.prec()
    }

    /// α_n η_n − β_n γ_n − 1
    pub fn unimodularity_residual(&self) -> Float {
        let p = self.prec();
        let ae = Float::with_val(p, &self.alpha_n * &self.eta_n);
        let bg = Float::with_val(p, &self.beta_n * &self.gamma_n);
        ae - bg - 1u32
    }

    pub fn round_to(&self, prec: u32) -> CoeffState {
        let r = |x: &Float| Float::with_val(prec, x);
        CoeffState {
            n: self.n,
            a_n: r(&self.a_n),
            b_n: r(&self.b_n),
            alpha_n: r(&self.alpha_n),
            beta_n: r(&self.beta_n),
            gamma_n: r(&self.gamma_n),
            eta_n: r(&self.eta_n),
            c_n: r(&self.c_n),
        }
    }

    fn all_finite(&self) -> bool {
        [
            &self.a_n,
            &self.b_n,
            &self.alpha_n,
            &self.beta_n,
            &self.gamma_n,
            &self.eta_n,
            &self.c_n,
        ]
        .iter()
        .all(|x| x.is_finite())
    }

    fn start(prec: u32, b0: Float, beta0: Float) -> CoeffState {
        CoeffState {
            n: 0,
            a_n: Float::new(prec),
            b_n: Float::with_val(prec, b0),
            alpha_n: Float::with_val(prec, 1u32),
            beta_n: Float::with_val(prec, beta0),
            gamma_n: Float::new(prec),
            eta_n: Float::with_val(prec, 1u32),
            c_n: Float::new(prec),
        }
    }
}

/// How b₀ and β₀ are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMode {
    /// b₀ = a, β₀ = 1 + a²N; only valid for c = 1
    Paper,
    /// contour integrals of ω_{0,N} around [0, a]
    Contour,
    /// first moments of the weight
    Oracle,
}

impl fmt::Display for InitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitMode::Paper => "paper",
            InitMode::Contour => "contour",
            InitMode::Oracle => "oracle",
        })
    }
}

impl FromStr for InitMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(InitMode::Paper),
            "contour" => Ok(InitMode::Contour),
            "oracle" => Ok(InitMode::Oracle),
            _ => Err(Error::domain(format!("unknown init mode {s:?} (paper|contour|oracle)"))),
        }
    }
}

/// e^{log_scale} Σ coeffs[k] z^k with coeffs[degree] = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPolynomial {
    pub degree: usize,
    pub coeffs: Vec<Complex>,
    pub log_scale: Float,
}

impl ScaledPolynomial {
    pub fn monomial(degree: usize, prec: u32) -> Self {
        let mut coeffs = vec![Complex::new(prec); degree + 1];
        coeffs[degree] = Complex::with_val(prec, 1u32);
        ScaledPolynomial {
            degree,
            coeffs,
            log_scale: Float::new(prec),
        }
    }

    pub fn from_real(coeffs: Vec<Float>) -> Self {
        let prec = coeffs.last().map_or(64, |c| c.prec());
        ScaledPolynomial {
            degree: coeffs.len() - 1,
            coeffs: coeffs.into_iter().map(|c| Complex::with_val(prec, c)).collect(),
            log_scale: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[self.degree].prec().0
    }

    /// Value at z as a LogComplex, including log_scale.
    pub fn evaluate(&self, z: &Complex) -> LogComplex {
        let prec = self.prec();
        let z = Complex::with_val(prec, z);
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= &z;
            acc += c;
        }
        let mut out = LogComplex::from_cplx(&acc);
        out.log_mag += &self.log_scale;
        out
    }

    /// p(z) and p′(z) by Horner, without log_scale.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let prec = z.prec().0;
        let mut p = Complex::new(prec);
        let mut dp = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            dp *= z;
            dp += &p;
            p *= z;
            p += c;
        }
        (p, dp)
    }

    /// Coefficient CSV: a header line, then `k,re,im` rows.
    pub fn write_csv<W: Write>(&self, mut w: W, params: &ProblemParams, digits: Option<usize>) -> Result<()> {
        let h = header_line(
            "poly",
            &[
                ("n", self.degree.to_string()),
                ("a", params.a.to_string()),
                ("c", params.c.to_string()),
                ("N", params.big_n.to_string()),
                ("log_scale", fmt_real(&self.log_scale, digits)),
                ("bits", self.prec().to_string()),
            ],
        );
        writeln!(w, "{h}")?;
        writeln!(w, "k,re,im")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(w, "{k},{},{}", fmt_real(c.real(), digits), fmt_real(c.imag(), digits))?;
        }
        Ok(())
    }

    /// Reads what [`write_csv`](Self::write_csv) wrote, at the recorded precision.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let head = lines.next().ok_or_else(|| Error::domain("empty coefficient file"))??;
        let (kind, fields) = parse_header(&head)?;
        if kind != "poly" {
            return Err(Error::domain(format!("not a coefficient file (kind {kind})")));
        }
        let prec: u32 = fields
            .get("bits")
            .and_then(|b| b.parse().ok())
            .ok_or_else(|| Error::domain("coefficient header lacks bits="))?;
        let log_scale = match fields.get("log_scale") {
            Some(s) => parse_real(s, prec)?,
            None => Float::new(prec),
        };
        let mut coeffs = Vec::new();
        for line in lines {
            let line = line?;
            if line.is_empty() || line.starts_with("k,") {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::domain(format!("bad coefficient row {line:?}")));
            }
            let k: usize = cols[0]
                .parse()
                .map_err(|_| Error::domain(format!("bad index in {line:?}")))?;
            if k != coeffs.len() {
                return Err(Error::domain(format!("coefficient rows out of order at k={k}")));
            }
            coeffs.push(Complex::with_val(
                prec,
                (parse_real(cols[1], prec)?, parse_real(cols[2], prec)?),
            ));
        }
        if coeffs.is_empty() {
            return Err(Error::domain("no coefficient rows"));
        }
        Ok(ScaledPolynomial {
            degree: coeffs.len() - 1,
            coeffs,
            log_scale,
        })
    }
}

/// Free-function form of [`ScaledPolynomial::evaluate`].
pub fn evaluate(poly: &ScaledPolynomial, z: &Complex) -> LogComplex {
    poly.evaluate(z)
}

/// ω_{n,N}(w) = ((w−a)/w)^c e^{−Naw} / w^n, principal power, cut on [0, a].
pub fn weight_omega(params: &ProblemParams, n: u32, w: &Complex) -> Result<Complex> {
    let prec = w.prec().0;
    let (x, y) = (w.real(), w.imag());
    if y.is_zero() && *x >= 0 && *x <= params.a {
        return Err(Error::Branch(format!("ω evaluated on its cut [0, a] at w = {w}")));
    }
    Ok(omega_unchecked(params, n, w, prec))
}

fn omega_unchecked(params: &ProblemParams, n: u32, w: &Complex, prec: u32) -> Complex {
    let a = params.a_mp(prec);
    let na = Float::with_val(prec, params.n_mp(prec) * &a);
    let ratio = Complex::with_val(prec, w - &a) / w;
    let mut e = Complex::with_val(prec, ratio.ln() * params.c_mp(prec));
    e -= Complex::with_val(prec, w * &na);
    if n > 0 {
        e -= Complex::with_val(prec, w.ln_ref()) * n;
    }
    e.exp()
}

/// Precision floor for contour initialization: 64 + ⌈1.5·0.1·Na/ln 2⌉.
pub fn contour_init_bits(params: &ProblemParams) -> u32 {
    64 + (1.5 * 0.1 * params.big_n * params.a / LN_2).ceil() as u32
}

/// The initial state at the precision of `ctx` (contour mode may go higher).
pub fn initial_state(params: &ProblemParams, mode: InitMode, ctx: &PrecisionContext) -> Result<CoeffState> {
    let prec = ctx.bits();
    match mode {
        InitMode::Paper => {
            if params.c != 1.0 {
                return Err(Error::domain(format!(
                    "paper initial data b0 = a, beta0 = 1 + a^2 N is only valid for c = 1 (got c = {}); \
                     use --init contour or --init oracle",
                    params.c
                )));
            }
            let a = params.a_mp(prec);
            let beta0 = Float::with_val(prec, a.square_ref()) * params.n_mp(prec) + 1u32;
            Ok(CoeffState::start(prec, a, beta0))
        }
        InitMode::Contour => {
            let cancel = contour_init_bits(params) - 64;
            let qprec = prec.max(contour_init_bits(params)) + cancel;
            let qctx = ctx.with_bits(qprec);
            let a = params.a_mp(qprec);
            let center = Complex::with_val(qprec, Float::with_val(qprec, &a / 2u32));
            let radius = Float::with_val(qprec, &a / 2u32) + Float::with_val(qprec, 0.1);
            let circle = Circle::new(center, radius);
            let tol = (-(prec as f64) * LN_2).exp().max(f64::MIN_POSITIVE);
            let two_pi_i = Complex::with_val(qprec, (0u32, Float::with_val(qprec, pi(qprec) * 2u32)));
            let i0 = contour_quadrature_tol(|w| omega_unchecked(params, 0, w, qprec), &circle, &qctx, tol)?;
            let i1 = contour_quadrature_tol(|w| omega_unchecked(params, 1, w, qprec), &circle, &qctx, tol)?;
            let b0 = -Complex::with_val(qprec, &i0 / &two_pi_i);
            let beta0 = Complex::with_val(qprec, &i1 / &two_pi_i);
            let out = prec.max(contour_init_bits(params));
            Ok(CoeffState::start(
                out,
                Float::with_val(out, b0.real()),
                Float::with_val(out, beta0.real()),
            ))
        }
        InitMode::Oracle => {
            let table = oracle::perturbed_moments(params, 2, ctx)?;
            let m00 = Float::with_val(prec, table.entries[0][0].real());
            let m10 = Float::with_val(prec, table.entries[1][0].real());
            // β₀ = h₀ N^{c+1} / (π Γ(c+1))
            let c1 = Float::with_val(prec, params.c_mp(prec) + 1u32);
            let npow = Float::with_val(prec, params.n_mp(prec).ln() * &c1).exp();
            let beta0 = Float::with_val(prec, &m00 * &npow) / (pi(prec) * gamma(&c1)?);
            let b0 = -Float::with_val(prec, &beta0 * &m10) / &m00;
            Ok(CoeffState::start(prec, b0, beta0))
        }
    }
}

/// One recurrence step n → n+1 at the precision of `state`.
pub fn step(state: &CoeffState, params: &ProblemParams) -> Result<CoeffState> {
    let p = state.prec();
    let n = state.n;
    let degenerate = |what: &str| Error::Degenerate {
        n,
        what: what.to_string(),
    };
    let f = |x: Float| Float::with_val(p, x);
    let (al, be, ga, b) = (&state.alpha_n, &state.beta_n, &state.gamma_n, &state.b_n);
    let a = params.a_mp(p);
    let big_n = params.n_mp(p);
    let c = params.c_mp(p);
    let nf = Float::with_val(p, n as u32);

    let ab = f(Float::with_val(p, al * be));
    if ab.is_zero() {
        return Err(degenerate("alpha_n beta_n vanishes"));
    }
    if be.is_zero() {
        return Err(degenerate("beta_n vanishes"));
    }
    let u = f(Float::with_val(p, be * ga) + 1u32);
    let bu_ab = f(Float::with_val(p, b * &u) / &ab);

    let a1 = f(Float::with_val(p, &state.a_n + &bu_ab));
    let alpha1 = f(Float::with_val(p, b / be));
    let gamma1 = -f(Float::with_val(p, be.recip_ref()));
    let c1 = -f(Float::with_val(p, &u / &ab));

    // b_{n+1} = (1+n+a²N) b/(aN) − (c+n)αβ/N + b²u/(αβ)
    let an = f(Float::with_val(p, &a * &big_n));
    let t1 = f(Float::with_val(p, &a * &an) + 1u32 + &nf) * b / &an;
    let t2 = f(Float::with_val(p, &c + &nf)) * &ab / &big_n;
    let t3 = f(Float::with_val(p, b * &bu_ab));
    let b1 = f(t1 - t2 + t3);

    // β_{n+1} = [a(c+n+1)α²β² − Nab(aαβu + bu² + α²β²c_n) − nαbβu] / (a(c+n+1)α²β)
    let cn1 = f(Float::with_val(p, &c + &nf) + 1u32);
    let ab2 = f(Float::with_val(p, ab.square_ref()));
    let lead = f(Float::with_val(p, &a * &cn1) * &ab2);
    let inner = f(Float::with_val(p, &a * &ab) * &u)
        + f(Float::with_val(p, b * &u) * &u)
        + f(Float::with_val(p, &ab2 * &state.c_n));
    let mid = f(f(Float::with_val(p, &an * b)) * inner);
    let last = f(Float::with_val(p, &nf * &ab) * b) * &u;
    let num = f(lead - mid - last);
    let den = f(Float::with_val(p, &a * &cn1) * f(Float::with_val(p, &ab * al)));
    if den.is_zero() {
        return Err(degenerate("(c+n+1) alpha_n^2 beta_n vanishes"));
    }
    let beta1 = f(num / den);
    if alpha1.is_zero() {
        return Err(degenerate("alpha_{n+1} vanishes (b_n = 0)"));
    }
    let eta1 = f(f(Float::with_val(p, &beta1 * &gamma1) + 1u32) / &alpha1);

    let next = CoeffState {
        n: n + 1,
        a_n: a1,
        b_n: b1,
        alpha_n: alpha1,
        beta_n: beta1,
        gamma_n: gamma1,
        eta_n: eta1,
        c_n: c1,
    };
    if !next.all_finite() {
        return Err(degenerate("non-finite coefficient"));
    }
    Ok(next)
}

/// Output of a synthesis run.
#[derive(Debug, Clone)]
pub struct Synthesis {
    /// P_0..P_{n_max}, or only P_{n_max} when run with `keep_all = false`
    pub polys: Vec<ScaledPolynomial>,
    /// states 0..n_max (only the initial state when c = 0)
    pub states: Vec<CoeffState>,
    /// Q_{n_max−1}, unnormalized (leading coefficient c_{n_max})
    pub q_last: Vec<Float>,
}

/// Working precision of a synthesis run of degree `n_max`.
pub fn synthesis_bits(params: &ProblemParams, n_max: usize, mode: InitMode, ctx: &PrecisionContext) -> u32 {
    let wp = ctx.bits() + GUARD_BITS_PER_STEP * n_max as u32;
    if mode == InitMode::Contour {
        wp.max(contour_init_bits(params))
    } else {
        wp
    }
}

/// P_0..P_{n_max} at the precision of `ctx`.
pub fn synthesize(
    params: &ProblemParams,
    n_max: usize,
    mode: InitMode,
    ctx: &PrecisionContext,
) -> Result<Vec<ScaledPolynomial>> {
    Ok(synthesize_full(params, n_max, mode, ctx, true)?.polys)
}

/// P_n alone, skipping storage of the lower degrees.
pub fn synthesize_last(
    params: &ProblemParams,
    n: usize,
    mode: InitMode,
    ctx: &PrecisionContext,
) -> Result<ScaledPolynomial> {
    let mut s = synthesize_full(params, n, mode, ctx, false)?;
    Ok(s.polys.pop().expect("synthesis returns at least one polynomial"))
}

/// Synthesis with the state trace and the last Q.
pub fn synthesize_full(
    params: &ProblemParams,
    n_max: usize,
    mode: InitMode,
    ctx: &PrecisionContext,
    keep_all: bool,
) -> Result<Synthesis> {
    if n_max < 1 {
        return Err(Error::domain("synthesize needs n_max >= 1"));
    }
    let out_prec = ctx.bits();
    let wp = synthesis_bits(params, n_max, mode, ctx);
    let wctx = ctx.with_bits(wp);
    let s0 = initial_state(params, mode, &wctx)?.round_to(wp);

    if params.c == 0.0 {
        let polys = if keep_all {
            (0..=n_max).map(|k| ScaledPolynomial::monomial(k, out_prec)).collect()
        } else {
            vec![ScaledPolynomial::monomial(n_max, out_prec)]
        };
        return Ok(Synthesis {
            polys,
            states: vec![s0.round_to(out_prec)],
            q_last: vec![Float::new(out_prec); n_max],
        });
    }

    let to_out = |v: &[Float]| -> ScaledPolynomial {
        ScaledPolynomial::from_real(v.iter().map(|x| Float::with_val(out_prec, x)).collect())
    };
    let mut p: Vec<Float> = vec![Float::with_val(wp, 1u32)];
    let mut q: Vec<Float> = Vec::new();
    let mut polys = Vec::new();
    if keep_all {
        polys.push(to_out(&p));
    }
    let mut states = vec![s0];
    for k in 0..n_max {
        let cur = &states[k];
        let next = step(cur, params)?;
        let shift = Float::with_val(wp, &next.a_n - &cur.a_n);
        // P_{k+1} = (z + shift) P_k − b_k Q_{k−1}
        let mut np = vec![Float::new(wp); k + 2];
        for (j, pj) in p.iter().enumerate() {
            np[j + 1] += pj;
            np[j] += Float::with_val(wp, pj * &shift);
        }
        for (j, qj) in q.iter().enumerate() {
            np[j] -= Float::with_val(wp, qj * &cur.b_n);
        }
        np[k + 1] = Float::with_val(wp, 1u32);
        // Q_k = c_{k+1} P_k + Q_{k−1}
        let mut nq: Vec<Float> = p.iter().map(|pj| Float::with_val(wp, pj * &next.c_n)).collect();
        for (j, qj) in q.iter().enumerate() {
            nq[j] += qj;
        }
        p = np;
        q = nq;
        if keep_all || k + 1 == n_max {
            polys.push(to_out(&p));
        }
        states.push(next);
    }
    Ok(Synthesis {
        polys,
        states: states.iter().map(|s| s.round_to(out_prec)).collect(),
        q_last: q.iter().map(|x| Float::with_val(out_prec, x)).collect(),
    })
}

/// State trace CSV: n, a_n, b_n, alpha_n, beta_n, gamma_n, c_n.
pub fn write_trace_csv<W: Write>(mut w: W, states: &[CoeffState], digits: Option<usize>) -> Result<()> {
    writeln!(w, "n,a_n,b_n,alpha_n,beta_n,gamma_n,c_n")?;
    for s in states {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            s.n,
            fmt_real(&s.a_n, digits),
            fmt_real(&s.b_n, digits),
            fmt_real(&s.alpha_n, digits),
            fmt_real(&s.beta_n, digits),
            fmt_real(&s.gamma_n, digits),
            fmt_real(&s.c_n, digits),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpnum::cabs;

    fn sqrt2() -> f64 {
        std::f64::consts::SQRT_2
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn omega_basics() {
        let p = ProblemParams::new(sqrt2(), 0.0, 3.0).unwrap();
        let w = Complex::with_val(128, (0.3, 0.7));
        let v = weight_omega(&p, 0, &w).unwrap();
        let want = Complex::with_val(128, &w * (-3.0 * sqrt2())).exp();
        assert!(cabs(&(v - want)) < 1e-14);
        let p = ProblemParams::new(sqrt2(), 0.6, 3.0).unwrap();
        let v = weight_omega(&p, 2, &Complex::with_val(128, (2.5, 0.0))).unwrap();
        assert!(v.imag().is_zero() && *v.real() > 0);
        assert!(matches!(
            weight_omega(&p, 0, &Complex::with_val(128, (0.5, 0.0))),
            Err(Error::Branch(_))
        ));
    }

    #[test]
    fn paper_mode_gated() {
        let p = ProblemParams::new(sqrt2(), 0.6, 20.0).unwrap();
        assert!(matches!(
            initial_state(&p, InitMode::Paper, &ctx()),
            Err(Error::Domain(_))
        ));
        let p = ProblemParams::new(sqrt2(), 1.0, 20.0).unwrap();
        let s = initial_state(&p, InitMode::Paper, &ctx()).unwrap();
        assert!((s.beta_n.to_f64() - 41.0).abs() < 1e-12);
    }

    #[test]
    fn contour_mode_matches_residues() {
        let p = ProblemParams::new(sqrt2(), 1.0, 20.0).unwrap();
        let s = initial_state(&p, InitMode::Contour, &ctx()).unwrap();
        let a = p.a_mp(256);
        assert!(Float::with_val(256, &s.b_n - &a).abs() < 1e-70);
        let want = Float::with_val(256, a.square_ref()) * 20u32 + 1u32;
        let d = Float::with_val(256, &s.beta_n - &want).abs();
        assert!(d < 1e-70, "beta0 off by {d}");
        let p0 = ProblemParams::new(sqrt2(), 0.0, 20.0).unwrap();
        let s = initial_state(&p0, InitMode::Contour, &ctx()).unwrap();
        assert!(s.b_n.clone().abs() < 1e-70);
        assert!(Float::with_val(256, &s.beta_n - 1u32).abs() < 1e-70);
    }

    #[test]
    fn first_step_by_hand() {
        let p = ProblemParams::new(sqrt2(), 1.0, 20.0).unwrap();
        let s0 = initial_state(&p, InitMode::Paper, &ctx()).unwrap();
        let s1 = step(&s0, &p).unwrap();
        let want = sqrt2() / 41.0;
        assert!((s1.a_n.to_f64() - want).abs() < 1e-15);
        assert!((s1.alpha_n.to_f64() - want).abs() < 1e-15);
        assert!((s1.gamma_n.to_f64() + 1.0 / 41.0).abs() < 1e-15);
        assert!(s1.unimodularity_residual().abs() < 1e-70);
        // true β₁ = 20.512…, from Gram–Schmidt
        assert!((s1.beta_n.to_f64() - 20.512).abs() < 1e-3);
    }

    #[test]
    fn zero_charge_monomials() {
        let p = ProblemParams::new(sqrt2(), 0.0, 6.0).unwrap();
        let polys = synthesize(&p, 6, InitMode::Contour, &ctx()).unwrap();
        for (k, q) in polys.iter().enumerate() {
            assert_eq!(q.degree, k);
            assert!(q.coeffs[..k].iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn first_polynomial_c1() {
        let a = sqrt2();
        let p = ProblemParams::new(a, 1.0, 20.0).unwrap();
        let polys = synthesize(&p, 3, InitMode::Paper, &ctx()).unwrap();
        assert_eq!(polys[0].degree, 0);
        let c0 = polys[1].coeffs[0].real().to_f64();
        assert!((c0 - a / 41.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        let one = ScaledPolynomial::monomial(0, 256);
        let v = one.evaluate(&Complex::with_val(256, (3.0, -1.0)));
        assert!(v.log_mag.is_zero() && v.phase.is_zero());
        let m = ScaledPolynomial::monomial(7, 256);
        let v = m.evaluate(&Complex::with_val(256, 2u32));
        assert!((v.log_mag.to_f64() - 7.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn csv_round_trip() {
        let p = ProblemParams::new(sqrt2(), 1.0, 8.0).unwrap();
        let poly = synthesize_last(&p, 8, InitMode::Paper, &ctx()).unwrap();
        let mut buf = Vec::new();
        poly.write_csv(&mut buf, &p, None).unwrap();
        let back = ScaledPolynomial::read_csv(&buf[..]).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn init_mode_parse() {
        assert_eq!("oracle".parse::<InitMode>().unwrap(), InitMode::Oracle);
        assert!("bogus".parse::<InitMode>().is_err());
    }
}
