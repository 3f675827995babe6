use planarop::lax::{self, initial_state, step, synthesize, synthesize_full, InitMode};
use planarop::mpnum::cabs;
use planarop::oracle::{gram_schmidt, perturbed_moments};
use planarop::{PrecisionContext, ProblemParams, ScaledPolynomial};
use rug::{Complex, Float};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn worst_rel(a: &ScaledPolynomial, b: &ScaledPolynomial) -> f64 {
    assert_eq!(a.degree, b.degree);
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| {
            let d = cabs(&Complex::with_val(256, x - y)).to_f64();
            let s = cabs(y).to_f64();
            if s == 0.0 {
                d
            } else {
                d / s
            }
        })
        .fold(0.0, f64::max)
}

#[test]
fn integer_charge_matches_gram_schmidt() {
    let ctx = PrecisionContext::default();
    for a in [SQRT2, 1.0 / SQRT2] {
        for c in [1.0, 2.0] {
            for n in [1usize, 5, 12, 20] {
                let p = ProblemParams::new(a, c, n as f64).unwrap();
                let lp = lax::synthesize_last(&p, n, InitMode::Contour, &ctx).unwrap();
                let t = perturbed_moments(&p, n + 1, &ctx).unwrap();
                let (gs, _) = gram_schmidt(&t, n).unwrap();
                let e = worst_rel(&lp, &gs[n]);
                assert!(e < 1e-20, "a={a} c={c} n={n}: {e:e}");
            }
        }
    }
}

#[test]
fn orthogonality_against_closed_form_moments() {
    let ctx = PrecisionContext::default();
    for c in [1.0, 2.0] {
        let n = 14;
        let p = ProblemParams::new(SQRT2, c, n as f64).unwrap();
        let polys = synthesize(&p, n, InitMode::Contour, &ctx).unwrap();
        let t = perturbed_moments(&p, n + 1, &ctx).unwrap();
        let pn = &polys[n];
        let pnorm = cabs(&t.inner(&pn.coeffs, &pn.coeffs)).to_f64().sqrt();
        assert!(pnorm > 0.0);
        for k in 0..n {
            let mut zk = vec![Complex::new(256); k + 1];
            zk[k] = Complex::with_val(256, 1u32);
            let ip = cabs(&t.inner(&pn.coeffs, &zk)).to_f64();
            let zn = t.entries[k][k].real().to_f64().sqrt();
            assert!(ip / (pnorm * zn) < 1e-20, "c={c} k={k}");
        }
        for q in &polys {
            assert!(t.inner(&q.coeffs, &q.coeffs).real().to_f64() > 0.0);
        }
    }
}

/// (1/2πi)∮ s^k ω_{n,N}(s) ds for integer c: the coefficient of s^{n+c−k−1} in (s−a)^c e^{−Nas}.
fn contour_moment(p: &ProblemParams, n: usize, k: usize, prec: u32) -> Float {
    let c = p.c as i64;
    let m = n as i64 + c - k as i64 - 1;
    let a = p.a_mp(prec);
    let na = Float::with_val(prec, &a * p.n_mp(prec));
    let mut s = Float::new(prec);
    for q in 0..=c.min(m).max(-1) {
        if q < 0 || m - q < 0 {
            continue;
        }
        let mut term = Float::with_val(prec, binom(c as u32, q as u32));
        term *= Float::with_val(prec, -&a).pow_i((c - q) as i32);
        term *= Float::with_val(prec, -&na).pow_i((m - q) as i32);
        term /= Float::with_val(prec, Float::factorial((m - q) as u32));
        s += term;
    }
    s
}

trait PowI {
    fn pow_i(self, e: i32) -> Float;
}

impl PowI for Float {
    fn pow_i(self, e: i32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

#[test]
fn second_row_leading_coefficient() {
    // Q_{n−1}: degree n−1, contour-orthogonal to s^k (k < n−1) against ω_{n,N},
    // normalized by −(1/2πi)∮ Q ω s^{n−1} ds = 1. Its leading coefficient is c_n.
    let ctx = PrecisionContext::default();
    let prec = 256;
    for n in 1..=5usize {
        let p = ProblemParams::new(SQRT2, 1.0, 20.0).unwrap();
        let syn = synthesize_full(&p, n, InitMode::Paper, &ctx, false).unwrap();
        let q = &syn.q_last;
        assert_eq!(q.len(), n);
        // orthogonality and normalization of the synthesized Q
        for k in 0..n {
            let mut v = Float::new(prec);
            for (j, qj) in q.iter().enumerate() {
                v += Float::with_val(prec, qj * contour_moment(&p, n, j + k, prec));
            }
            if k + 1 < n {
                assert!(v.to_f64().abs() < 1e-40, "n={n} k={k} {v}");
            } else {
                assert!((v.to_f64() + 1.0).abs() < 1e-40, "n={n} normalization {v}");
            }
        }
        let lead = &q[n - 1];
        let cn = &syn.states[n].c_n;
        assert!(Float::with_val(prec, lead - cn).abs() < 1e-60);
    }
}

#[test]
fn determinant_closures_along_300_steps() {
    let ctx = PrecisionContext::default();
    let p = ProblemParams::new(SQRT2, 1.0, 300.0).unwrap();
    let mut s = initial_state(&p, InitMode::Paper, &ctx.with_bits(256 + 900)).unwrap();
    let zs = [(0.3, 0.1), (-1.0, 2.0), (0.0, -0.7), (2.5, 0.0), (-0.2, -0.2)];
    for _ in 0..300 {
        let next = step(&s, &p).unwrap();
        let prec = next.prec();
        // det M_n = (z + a_{n+1} − a_n) + b_n c_{n+1}
        for (re, im) in zs {
            let z = Complex::with_val(prec, (re, im));
            let shift = Float::with_val(prec, &next.a_n - &s.a_n);
            let det = Complex::with_val(prec, &z + &shift) + Float::with_val(prec, &s.b_n * &next.c_n);
            let d = cabs(&(det - &z)).to_f64();
            assert!(d < 1e-20 * (1.0 + shift.to_f64().abs()), "n={} det residual {d:e}", s.n);
        }
        assert!(next.unimodularity_residual().abs() < 1e-20);
        s = next;
    }
}

#[test]
fn contour_and_oracle_init_agree_for_fractional_charge() {
    let ctx = PrecisionContext::default();
    let p = ProblemParams::new(SQRT2, 0.6, 3.0).unwrap();
    let a = initial_state(&p, InitMode::Contour, &ctx).unwrap();
    let b = initial_state(&p, InitMode::Oracle, &ctx).unwrap();
    for (x, y) in [(&a.b_n, &b.b_n), (&a.beta_n, &b.beta_n)] {
        let rel = (x.to_f64() - y.to_f64()).abs() / y.to_f64().abs();
        assert!(rel < 1e-8, "{x} vs {y}");
    }
}

#[test]
fn oracle_mode_reproduces_paper_values_at_unit_charge() {
    let ctx = PrecisionContext::default();
    let p = ProblemParams::new(SQRT2, 1.0, 20.0).unwrap();
    let a = initial_state(&p, InitMode::Oracle, &ctx).unwrap();
    let b = initial_state(&p, InitMode::Paper, &ctx).unwrap();
    assert!(Float::with_val(256, &a.b_n - &b.b_n).abs() < 1e-60);
    assert!(Float::with_val(256, &a.beta_n - &b.beta_n).abs() < 1e-60);
}

#[test]
fn fractional_charge_matches_quadrature_gram_schmidt() {
    let ctx = PrecisionContext::default();
    for n in [2usize, 5, 8] {
        let p = ProblemParams::new(SQRT2, 0.6, n as f64).unwrap();
        let lp = lax::synthesize_last(&p, n, InitMode::Contour, &ctx).unwrap();
        let t = perturbed_moments(&p, n + 1, &ctx).unwrap();
        let (gs, _) = gram_schmidt(&t, n).unwrap();
        let e = worst_rel(&lp, &gs[n]);
        assert!(e < 1e-6, "n={n}: {e:e}");
    }
}
