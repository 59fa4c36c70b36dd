use std::sync::Mutex;

use once_cell::sync::Lazy;
use rug::{Float, Integer, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};

use super::zeta::zeta_bits;

static BERNOULLI: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::from(1)]));

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        let mut s = Rational::new();
        for (k, b) in table.iter().enumerate() {
            s += Rational::from(b * Integer::from(Integer::binomial_u(m as u32 + 1, k as u32)));
        }
        table.push(-s / Rational::from(m + 1));
    }
    table[n].clone()
}

/// ζ(1 - n) for n ≥ 1, i.e. ζ(0), ζ(-1), ….
fn zeta_nonpositive(minus: usize) -> Rational {
    if minus == 0 {
        Rational::from((-1, 2))
    } else {
        -bernoulli(minus + 1) / Rational::from(minus + 1)
    }
}

/// Li_s(x) for rational x in [-1, 1].
pub fn eval_polylog(s: u32, x: &Rational, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    if s == 0 {
        return Err(Error::OutOfRange("polylog order must be at least 1".into()));
    }
    if *x > 1 || *x < -1 {
        return Err(Error::OutOfRange(format!("polylog argument {x} outside [-1, 1]")));
    }
    if s == 1 && *x == 1 {
        return Err(Error::DivergentInput("Li_1(1)".into()));
    }
    let prec = ctx.bits() + 16;
    let xb = Ball::from_rational(x, prec);
    let one_minus = Ball::from_rational(&Rational::from(1 - x), prec);
    Ok(polylog_ball(s, &xb, &one_minus, prec)?.set_prec(ctx.bits()))
}

/// Li_s at a point given together with 1 - x (for accuracy near x = 1).
/// Accepts x in [-1, 1]; s = 0 gives x/(1-x).
pub fn polylog_ball(s: u32, x: &Ball, one_minus_x: &Ball, prec: u32) -> Result<Ball> {
    if s == 0 {
        return one_minus_x
            .recip()
            .map(|r| x.mul_ball(&r))
            .ok_or_else(|| Error::DivergentInput("Li_0(1)".into()));
    }
    if s == 1 {
        return one_minus_x
            .ln()
            .map(|l| l.neg())
            .ok_or_else(|| Error::DivergentInput("Li_1(1)".into()));
    }
    let xf = x.mid_f64();
    if one_minus_x.rad_f64() == 0.0 && one_minus_x.mid().is_zero() {
        return zeta_bits(s, 1, prec);
    }
    if x.abs_upper_f64() <= 0.5 {
        return Ok(series_small(s, x, prec));
    }
    if xf > 0.0 {
        return near_one(s, one_minus_x, prec);
    }
    if x.mid() == &-1 && x.rad_f64() == 0.0 {
        return zeta_bits(s, -1, prec);
    }
    // Li_s(x) = 2^{1-s} Li_s(x^2) - Li_s(-x)
    let sq = x.sqr();
    let one_minus_sq = one_minus_x.mul_ball(&(Ball::from_int(2, prec) - one_minus_x));
    let a = polylog_ball(s, &sq, &one_minus_sq, prec)?;
    let neg = x.neg();
    let one_plus = Ball::from_int(2, prec) - one_minus_x;
    let b = polylog_ball(s, &neg, &one_plus, prec)?;
    Ok(a.mul_2si(1 - s as i32) - b)
}

/// Σ x^n / n^s for |x| ≤ 1/2 with the geometric tail bound.
fn series_small(s: u32, x: &Ball, prec: u32) -> Ball {
    let mut total = Ball::zero(prec);
    let mut pw = x.clone();
    let mut n = 1u64;
    let ax = x.abs_upper_f64().max(1e-300);
    loop {
        let term = pw.mul_ball(&Ball::from_int(n as i64, prec).pow_u(s).recip().expect("positive"));
        total = total + term;
        let next = n + 1;
        let log2_tail = next as f64 * ax.log2() - f64::from(s) * (next as f64).log2() - (1.0 - ax).log2();
        if log2_tail < -(f64::from(prec) + 4.0) || ax == 0.0 {
            return total.add_error(&(Float::with_val(64, 1) << (log2_tail.ceil() as i32 + 1)));
        }
        pw = pw.mul_ball(x);
        n = next;
    }
}

/// Expansion in μ = ln x about x = 1:
/// Li_s(e^μ) = Σ_{k≠s-1} ζ(s-k) μ^k/k! + μ^{s-1}/(s-1)! (H_{s-1} - ln(-μ)).
fn near_one(s: u32, one_minus_x: &Ball, prec: u32) -> Result<Ball> {
    let mu = one_minus_x
        .neg()
        .ln_1p()
        .ok_or_else(|| Error::DivergentInput("Li_s near 0".into()))?;
    let two_pi = Ball::pi(prec).mul_int(2);
    let rho = mu.abs_upper_f64() / two_pi.mid_f64();
    assert!(rho < 0.5, "near_one requires x close to 1");
    let mut total = Ball::zero(prec);
    let mut pw = Ball::from_int(1, prec);
    let mut fact = Integer::from(1);
    let mut k = 0u32;
    loop {
        if k > 0 {
            pw = pw.mul_ball(&mu);
            fact *= k;
        }
        let term_base = pw.mul_rational(&Rational::from((Integer::from(1), fact.clone())));
        if k + 1 == s {
            let mut h = Rational::new();
            for j in 1..s {
                h += Rational::from((1, j));
            }
            let log = mu.neg().ln().expect("mu < 0");
            total = total + term_base.mul_ball(&(Ball::from_rational(&h, prec) - log));
        } else if k + 1 < s {
            total = total + term_base.mul_ball(&zeta_bits(s - k, 1, prec)?);
        } else {
            let z = zeta_nonpositive((k - s) as usize);
            total = total + term_base.mul_rational(&z);
            if k > s + 2 && (k - s) % 2 == 1 {
                // after an odd index ζ(s-k) vanishes at the next step, so bound here
                let log2_tail =
                    2.0 + f64::from(s - 1) * two_pi.mid_f64().log2() + f64::from(k + 1) * rho.log2() - (1.0 - rho).log2();
                if log2_tail < -(f64::from(prec) + 4.0) {
                    return Ok(total.add_error(&(Float::with_val(64, 1) << (log2_tail.ceil() as i32 + 1))));
                }
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30)
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(zeta_nonpositive(1), q(-1, 12));
    }

    #[test]
    fn dilog_half() {
        let v = eval_polylog(2, &q(1, 2), &ctx()).unwrap();
        let l2 = Ball::ln2(256);
        let expect = Ball::pi(256).sqr().div_int(12) - l2.sqr().div_int(2);
        assert!(v.overlaps(&expect));
        assert!(v.rad_f64() < 1e-30);
    }

    #[test]
    fn trilog_half() {
        let v = eval_polylog(3, &q(1, 2), &ctx()).unwrap();
        let l2 = Ball::ln2(256);
        let z3 = zeta_bits(3, 1, 256).unwrap();
        let expect = z3.mul_rational(&q(7, 8)) - Ball::pi(256).sqr().div_int(12).mul_ball(&l2) + l2.pow_u(3).div_int(6);
        assert!(v.overlaps(&expect));
    }

    #[test]
    fn dilog_minus_one() {
        let v = eval_polylog(2, &q(-1, 1), &ctx()).unwrap();
        assert!(v.overlaps(&Ball::pi(256).sqr().div_int(12).neg()));
    }

    #[test]
    fn near_one_against_direct_series() {
        // x = 3/4 is reachable by both routes: expansion about 1 and the
        // duplication of Li(-3/4) which recurses into x^2 = 9/16
        let prec = 200;
        for s in 2..6u32 {
            let x = Ball::from_rational(&q(3, 4), prec);
            let om = Ball::from_rational(&q(1, 4), prec);
            let a = near_one(s, &om, prec).unwrap();
            // direct sum Σ (3/4)^n/n^s with ratio tail bound
            let mut total = Ball::zero(prec);
            let mut pw = x.clone();
            for n in 1..=600i64 {
                total = total + pw.mul_ball(&Ball::from_int(n, prec).pow_u(s).recip().unwrap());
                pw = pw.mul_ball(&x);
            }
            let total = total.add_error(&Float::with_val(64, 0.75f64.powi(601) * 4.0));
            assert!(a.overlaps(&total), "s = {s}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(eval_polylog(1, &q(1, 1), &ctx()), Err(Error::DivergentInput(_))));
        assert!(eval_polylog(2, &q(3, 2), &ctx()).is_err());
    }
}
