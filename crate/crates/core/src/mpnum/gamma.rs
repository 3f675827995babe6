use rug::Float;

use crate::{Error, Result};

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: &Float) -> Result<Float> {
    if !(x.is_finite() && *x > 0) {
        return Err(Error::domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(Float::with_val(x.prec(), x.ln_gamma_ref()))
}

fn is_nonpositive_integer(x: &Float) -> bool {
    *x <= 0 && x.is_integer()
}

/// Γ(x); poles are a domain error.
pub fn gamma(x: &Float) -> Result<Float> {
    if is_nonpositive_integer(x) {
        return Err(Error::domain(format!("Γ has a pole at {x}")));
    }
    Ok(Float::with_val(x.prec(), x.gamma_ref()))
}

/// 1/Γ(x), entire: zero at the poles of Γ.
pub fn rgamma(x: &Float) -> Float {
    if is_nonpositive_integer(x) {
        return Float::new(x.prec());
    }
    Float::with_val(x.prec(), x.gamma_ref()).recip()
}

/// Rising factorial (x)_n by direct product.
pub fn pochhammer(x: &Float, n: u32) -> Float {
    let mut acc = Float::with_val(x.prec(), 1u32);
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += 1u32;
    }
    acc
}
