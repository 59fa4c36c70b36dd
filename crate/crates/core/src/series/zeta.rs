use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use rug::{Float, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};

static CACHE: Lazy<Mutex<HashMap<(u32, i8, u32), Ball>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Σ_{k≥0} (-1)^k a_k for a_k = ∫ x^k dμ with μ ≥ 0 and a_0 ≤ 1, using the
/// Chebyshev weights of Cohen, Rodriguez Villegas and Zagier. The
/// truncation error is at most 2·(3+√8)^-n.
pub fn alternating_moment_sum(a: impl Fn(u64, u32) -> Ball, bits: u32) -> Ball {
    let n = ((f64::from(bits) + 12.0) / 2.54).ceil() as u64 + 1;
    let prec = bits + 32;
    let root = Ball::from_int(8, prec).sqrt().expect("positive");
    let base = Ball::from_int(3, prec) + root;
    let dn = base.pow_u(n as u32);
    let d = (&dn + &dn.recip().expect("nonzero")).div_int(2);
    let mut b = Rational::from(-1);
    let mut c = d.neg();
    let mut s = Ball::zero(prec);
    for k in 0..n {
        c = Ball::from_rational(&b, prec) - &c;
        s = s + c.mul_ball(&a(k, prec));
        let (ki, ni) = (k as i64, n as i64);
        b *= Rational::from(2 * (ki + ni) * (ki - ni));
        b /= Rational::from((2 * ki + 1) * (ki + 1));
    }
    let tail = Float::with_val(64, 2) * Float::with_val(64, 2).pow_ref_neg(2.54 * n as f64);
    (s / d).add_error(&tail)
}

trait PowNeg {
    fn pow_ref_neg(&self, e: f64) -> Float;
}

impl PowNeg for Float {
    // 2^-e rounded up; used only for error bounds
    fn pow_ref_neg(&self, e: f64) -> Float {
        let floor = e.floor() as i32;
        Float::with_val(64, 1) >> floor
    }
}

/// ζ(s) for sign = +1, ζ(s̄) = Σ (-1)^n n^-s for sign = -1.
pub fn eval_zeta(s: u32, sign: i8, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    zeta_bits(s, sign, ctx.bits())
}

pub(crate) fn zeta_bits(s: u32, sign: i8, bits: u32) -> Result<Ball> {
    if s == 0 || (s == 1 && sign == 1) {
        return Err(Error::DivergentInput(format!("zeta({})", i64::from(s) * i64::from(sign))));
    }
    if let Some(b) = CACHE.lock().unwrap().get(&(s, sign, bits)) {
        return Ok(b.clone());
    }
    let eta = alternating_moment_sum(
        |k, prec| Ball::from_int(k as i64 + 1, prec).pow_u(s).recip().expect("positive"),
        bits,
    );
    let value = if sign == -1 {
        eta.neg()
    } else {
        // η(s) = (1 - 2^{1-s}) ζ(s)
        let prec = eta.prec();
        let factor = Ball::from_int(1, prec) - Ball::from_int(1, prec).mul_2si(1 - s as i32);
        eta / factor
    };
    let value = value.set_prec(bits);
    CACHE.lock().unwrap().insert((s, sign, bits), value.clone());
    Ok(value)
}
