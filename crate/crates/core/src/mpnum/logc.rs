use rug::float::Special;
use rug::{Complex, Float};

use super::{carg, expi, pi};

/// A complex number stored as (ln|w|, arg w), phase in (−π, π].
///
/// Zero has `log_mag = −∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogComplex {
    pub log_mag: Float,
    pub phase: Float,
}

fn wrap_phase(mut ph: Float) -> Float {
    let prec = ph.prec();
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    if ph.is_finite() {
        let k = Float::with_val(prec, &ph / &two_pi).round();
        ph -= k * &two_pi;
        let p = pi(prec);
        if ph <= -p.clone() {
            ph += &two_pi;
        } else if ph > p {
            ph -= &two_pi;
        }
    }
    ph
}

impl LogComplex {
    pub fn new(log_mag: Float, phase: Float) -> Self {
        LogComplex {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    pub fn one(prec: u32) -> Self {
        LogComplex {
            log_mag: Float::new(prec),
            phase: Float::new(prec),
        }
    }

    pub fn zero(prec: u32) -> Self {
        LogComplex {
            log_mag: Float::with_val(prec, Special::NegInfinity),
            phase: Float::new(prec),
        }
    }

    pub fn from_cplx(w: &Complex) -> Self {
        let prec = w.prec().0;
        if w.is_zero() {
            return Self::zero(prec);
        }
        let m = Float::with_val(prec, w.abs_ref()).ln();
        LogComplex {
            log_mag: m,
            phase: carg(w),
        }
    }

    /// e^{w} for complex w, kept in log form.
    pub fn exp_of(w: &Complex) -> Self {
        LogComplex::new(w.real().clone(), w.imag().clone())
    }

    pub fn prec(&self) -> u32 {
        self.log_mag.prec().max(self.phase.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag.is_infinite() && self.log_mag.is_sign_negative()
    }

    pub fn to_cplx(&self) -> Complex {
        let prec = self.prec();
        if self.is_zero() {
            return Complex::new(prec);
        }
        let r = Float::with_val(prec, self.log_mag.exp_ref());
        expi(prec, &self.phase) * r
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let r = self.log_mag.to_f64().exp();
        let ph = self.phase.to_f64();
        num_complex::Complex64::from_polar(r, ph)
    }

    /// ln w on the principal sheet.
    pub fn ln(&self) -> Complex {
        Complex::with_val(self.prec(), (&self.log_mag, &self.phase))
    }

    pub fn mul(&self, o: &LogComplex) -> LogComplex {
        let prec = self.prec().max(o.prec());
        LogComplex::new(
            Float::with_val(prec, &self.log_mag + &o.log_mag),
            Float::with_val(prec, &self.phase + &o.phase),
        )
    }

    pub fn div(&self, o: &LogComplex) -> LogComplex {
        let prec = self.prec().max(o.prec());
        LogComplex::new(
            Float::with_val(prec, &self.log_mag - &o.log_mag),
            Float::with_val(prec, &self.phase - &o.phase),
        )
    }

    pub fn neg(&self) -> LogComplex {
        let prec = self.prec();
        LogComplex::new(self.log_mag.clone(), Float::with_val(prec, &self.phase + pi(prec)))
    }

    /// w^p for real p, with the phase taken from the stored argument.
    pub fn powf(&self, p: &Float) -> LogComplex {
        let prec = self.prec().max(p.prec());
        LogComplex::new(
            Float::with_val(prec, &self.log_mag * p),
            Float::with_val(prec, &self.phase * p),
        )
    }

    pub fn add(&self, o: &LogComplex) -> LogComplex {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let prec = self.prec().max(o.prec());
        let m = if self.log_mag >= o.log_mag {
            self.log_mag.clone()
        } else {
            o.log_mag.clone()
        };
        let neg_m = Float::with_val(prec, -&m);
        let shift = LogComplex::new(neg_m, Float::new(prec));
        let s = self.mul(&shift).to_cplx() + o.mul(&shift).to_cplx();
        let mut out = LogComplex::from_cplx(&s);
        if !out.is_zero() {
            out.log_mag += &m;
        }
        out
    }

    /// |self / o − 1| without leaving log space for the large parts.
    pub fn rel_diff(&self, o: &LogComplex) -> Float {
        let r = self.div(o).to_cplx() - 1u32;
        Float::with_val(r.prec().0, r.abs_ref())
    }
}
