use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::Result;

const BBP: [i64; 23] = [
    2048, -11264, -1024, 11776, -512, 4096, 256, 3456, 128, -704, -64, -128, -32, -176, 16, 216, 8, 64, -4, 46, -2,
    -11, 1,
];

/// ζ(3) = (5/2) Σ_{k≥1} (-1)^{k+1} / (k^3 C(2k,k)).
pub fn zeta3_apery(ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let bits = ctx.bits();
    let prec = bits + 32;
    let mut s = Ball::zero(prec);
    let mut k = 1u32;
    loop {
        let denom = Integer::from(k).pow(3u32) * Integer::from(Integer::binomial_u(2 * k, k));
        let term = Ball::from_rational(&Rational::from((Integer::from(1), denom.clone())), prec);
        s = if k % 2 == 1 { s + term } else { s - term };
        // the next term bounds the remainder of the alternating series
        if denom.significant_bits() > bits + 40 {
            let next = Integer::from(k + 1).pow(3u32) * Integer::from(Integer::binomial_u(2 * k + 2, k + 1));
            let bound = Float::with_val(64, 1) >> (next.significant_bits() - 1);
            return Ok(s.add_error(&bound).mul_rational(&Rational::from((5, 2))).set_prec(bits));
        }
        k += 1;
    }
}

/// The binary BBP-type series with period 24.
pub fn zeta3_bbp(ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let bits = ctx.bits();
    let prec = bits + 32;
    let mut s = Ball::zero(prec);
    let total_coeff: i64 = BBP.iter().map(|c| c.abs()).sum();
    let mut k = 0u64;
    loop {
        let mut block = Ball::zero(prec);
        for (j, &c) in BBP.iter().enumerate() {
            let d = Integer::from(24 * k + j as u64 + 1).pow(3u32);
            block = block + Ball::from_rational(&Rational::from((Integer::from(c), d)), prec);
        }
        s = s + block.mul_2si(-(12 * k as i32));
        // remaining blocks: Σ_{k'>k} 2^{-12k'} Σ|c| / (24k'+1)^3 ≤ Σ|c| 2^{-12(k+1)} · 2
        let log2_tail = (total_coeff as f64).log2() + 1.0 - 12.0 * (k + 1) as f64;
        if log2_tail < -(f64::from(prec) + 4.0) {
            let bound = Float::with_val(64, 1) << (log2_tail.ceil() as i32);
            return Ok(s.add_error(&bound).div_int(672).set_prec(bits));
        }
        k += 1;
    }
}

/// 7π^3/180 - 2 Σ_{k≤K} 1/(k^3 (e^{2πk} - 1)), evaluated at 256 bits.
pub fn zeta3_ramanujan(terms: u32) -> Ball {
    let prec = 256;
    let pi = Ball::pi(prec);
    let mut s = Ball::zero(prec);
    for k in 1..=terms {
        let e = pi.mul_int(2 * i64::from(k)).exp_m1();
        let denom = e.mul_int(i64::from(k).pow(3u32));
        s = s + denom.recip().expect("positive");
    }
    pi.pow_u(3).mul_rational(&Rational::from((7, 180))) - s.mul_int(2)
}
