use rug::{Float, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::wordcalc::SignedComposition;

use super::direct::sum_accelerated;
use super::mzv::mzv_bits;
use super::zeta::zeta_bits;

fn reject_poles(x: &Rational) -> Result<()> {
    if *x.denom() == 1 && *x > 0 {
        return Err(Error::PoleAtPositiveInteger(x.to_string()));
    }
    Ok(())
}

fn direct_prec(ctx: &PrecisionContext) -> u32 {
    ctx.bits().min(192)
}

/// Σ_n 1/(n(n-x)) Σ_{m<n} 1/(m-x) - Σ_n 1/(n^2(n-x)), summed as one series.
pub fn sumgf_residual(x: &Rational, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    reject_poles(x)?;
    let prec = direct_prec(ctx);
    let xf = Float::with_val(prec, x);
    let mut inner = Float::with_val(prec, 0);
    let term = move |n: u64| {
        let nf = Float::with_val(prec, n);
        let nx = Float::with_val(prec, &nf - &xf);
        let d = Float::with_val(prec, &nf * &nx);
        let t = Float::with_val(prec, &inner - nf.recip()) / d;
        inner += nx.recip();
        t
    };
    Ok(sum_accelerated(term, ctx.max_terms, 1, ctx.acceleration, prec))
}

/// Λ(x) from ψ(1-x) + γ = Σ x/(n(x-n)) and ψ'(1-x) - ζ(2) = Σ (2nx - x^2)/(n^2 (n-x)^2),
/// via xΛ(x) = (ψ'(1-x) - ζ(2))/2 - (ψ(1-x) + γ)^2/2.
fn lambda_closed(x: &Rational, ctx: &PrecisionContext) -> Result<Ball> {
    if *x == 0 {
        return zeta_bits(3, 1, ctx.bits());
    }
    let prec = direct_prec(ctx);
    let xf = Float::with_val(prec, x);
    let xa = xf.clone();
    let a = sum_accelerated(
        move |n| {
            let nf = Float::with_val(prec, n);
            let d = Float::with_val(prec, &nf * Float::with_val(prec, &xa - &nf));
            Float::with_val(prec, &xa / d)
        },
        ctx.max_terms,
        0,
        ctx.acceleration,
        prec,
    );
    let xb = xf.clone();
    let b = sum_accelerated(
        move |n| {
            let nf = Float::with_val(prec, n);
            let num = Float::with_val(prec, &nf * &xb) * 2u32 - Float::with_val(prec, xb.square_ref());
            let nx = Float::with_val(prec, &nf - &xb);
            let den = Float::with_val(prec, nf.square_ref()) * nx.square();
            num / den
        },
        ctx.max_terms,
        0,
        ctx.acceleration,
        prec,
    );
    let two_x = Ball::from_rational(&Rational::from(x * 2u32), prec);
    (b - a.sqr())
        .checked_div(&two_x)
        .ok_or_else(|| Error::Domain("x too close to 0 for the closed form".into()))
}

/// Λ(x) - Σ_{n<M} ζ(n+2,1) x^n, with the coefficient-tail bound
/// (1 + 2/M)(|x|/2)^M / (2(1 - |x|/2)) added to the radius.
pub fn lambda_gf_check(x: &Rational, m: u32, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    if x.clone().abs() >= 1 {
        return Err(Error::OutOfRange(format!("|x| must be below 1, got {x}")));
    }
    let bits = ctx.bits();
    let lam = lambda_closed(x, ctx)?;
    let mut series = Ball::zero(bits);
    let mut pw = Rational::from(1);
    for n in 0..m {
        let z = mzv_bits(&SignedComposition::positive(&[n + 2, 1]), bits)?;
        series = series + z.mul_rational(&pw);
        pw *= x;
    }
    let ax = x.to_f64().abs();
    let mf = f64::from(m.max(1));
    let bound = (1.0 + 2.0 / mf) * (ax / 2.0).powf(mf) / (2.0 * (1.0 - ax / 2.0)) * (1.0 + 1e-9);
    Ok((lam - series).add_error_f64(bound))
}
