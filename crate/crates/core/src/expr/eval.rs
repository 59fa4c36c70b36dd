use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::series::{
    eval_polylog, eval_qmzv, eval_witten, eval_zeta_via_stirling, mzv_bits, zeta3_apery, zeta3_bbp, zeta3_ramanujan,
    WittenParams,
};
use crate::wordcalc::SignedComposition;

use super::ast::{BinOp, Constant, Expr};

/// Numeric value of an expression as a ball at the working precision of `ctx`.
pub fn eval(e: &Expr, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    Ok(eval_at(e, ctx, ctx.bits())?.set_prec(ctx.bits()))
}

/// Absolute tolerance handed to the quadrature engine.
fn quadrature_tol(ctx: &PrecisionContext) -> f64 {
    10f64.powi(-(ctx.target_digits as i32 + 2)).max(1e-30)
}

fn eval_at(e: &Expr, ctx: &PrecisionContext, bits: u32) -> Result<Ball> {
    Ok(match e {
        Expr::Num(q) => Ball::from_rational(q, bits),
        Expr::Const(Constant::Pi) => Ball::pi(bits),
        Expr::Const(Constant::Log2) => Ball::ln2(bits),
        Expr::Zeta(c) => mzv_bits(c, bits)?,
        Expr::QZeta { q, args } => eval_qmzv(q, &SignedComposition::positive(args), ctx)?,
        Expr::Li { s, x } => eval_polylog(*s, x, ctx)?,
        Expr::Witten(r, s, t) => eval_witten(WittenParams::new(*r, *s, *t), ctx)?,
        Expr::Int(id) => quadrature::integrate(id, quadrature_tol(ctx), ctx)?,
        Expr::Apery => zeta3_apery(ctx)?,
        Expr::Bbp => zeta3_bbp(ctx)?,
        Expr::Ramanujan(k) => zeta3_ramanujan(*k),
        Expr::StirlingZeta(m, n) => eval_zeta_via_stirling(*m, *n)?,
        Expr::Neg(a) => eval_at(a, ctx, bits)?.neg(),
        Expr::Pow(a, n) => eval_at(a, ctx, bits)?.pow_u(*n),
        Expr::Bin(op, a, b) => {
            let x = eval_at(a, ctx, bits)?;
            let y = eval_at(b, ctx, bits)?;
            match op {
                BinOp::Add => x.add_ball(&y),
                BinOp::Sub => x.sub_ball(&y),
                BinOp::Mul => x.mul_ball(&y),
                BinOp::Div => x
                    .checked_div(&y)
                    .ok_or_else(|| Error::Domain(format!("division by a value containing 0: {b}")))?,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn value(text: &str, digits: u32) -> Ball {
        eval(&parse(text).unwrap(), &PrecisionContext::new(digits)).unwrap()
    }

    #[test]
    fn alternating_identity() {
        let r = value("8*zeta(-2,1) - zeta(3)", 30);
        assert!(r.contains_zero() && r.rad_f64() < 1e-25, "{r}");
    }

    #[test]
    fn goldbach_sum() {
        let r = value("zeta(3,1) + zeta(4) - pi^4/72", 30);
        assert!(r.contains_zero() && r.rad_f64() < 1e-25, "{r}");
    }

    #[test]
    fn arithmetic() {
        let r = value("(1/3 - 0.5)*6 + 2^3", 20);
        assert!(r.contains_rational(&rug::Rational::from(7)));
        assert!(r.rad_f64() < 1e-20);
        let err = eval(&parse("1/(pi - pi)").unwrap(), &PrecisionContext::new(20)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(matches!(
            eval(&parse("zeta(1)").unwrap(), &PrecisionContext::new(20)),
            Err(Error::DivergentComposition(_))
        ));
    }

    #[test]
    fn special_calls() {
        let r = value("li(2, 0.5) - pi^2/12 + log2^2/2", 25);
        assert!(r.contains_zero(), "{r}");
        let r = value("apery() - bbp()", 30);
        assert!(r.contains_zero(), "{r}");
        let r = value("witten(1,1,1) - 2*zeta(3)", 20);
        assert!(r.contains_zero() && r.rad_f64() < 1e-20, "{r}");
    }
}
