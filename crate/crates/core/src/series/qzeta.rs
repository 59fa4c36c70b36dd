use rug::{Float, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::wordcalc::SignedComposition;

/// One level of a nested q-sum: the term q^{a n} / (1 - q^n)^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPart {
    pub e: u32,
    pub a: u32,
}

fn check_q(q: &Rational) -> Result<()> {
    if *q <= 0 || *q >= 1 {
        return Err(Error::InvalidQ(q.to_string()));
    }
    Ok(())
}

/// Σ_{n_1>…>n_r≥1} Π q^{a_j n_j} / (1 - q^{n_j})^{e_j}. Every term is
/// positive, so the tail bound (inner sums ≤ n·(1-q)^{-e}) is rigorous.
pub fn nested_q_sum(q: &Rational, parts: &[QPart], bits: u32, max_terms: u64) -> Result<Ball> {
    check_q(q)?;
    if parts.is_empty() {
        return Ok(Ball::from_int(1, bits));
    }
    if parts[0].a == 0 {
        return Err(Error::DivergentInput("outer q-part needs a positive power of q".into()));
    }
    let r = parts.len();
    let qf = q.to_f64();
    let theta = qf.powi(parts[0].a as i32);
    let log2_inner: f64 = parts[1..].iter().map(|p| -f64::from(p.e) * (1.0 - qf).log2()).sum();
    // smallest N whose tail bound is below 2^-(bits+4)
    let tail_log2 = |n: u64| -> Option<f64> {
        let next = (n + 1) as f64;
        let beta = ((next + 1.0) / next).powi(r as i32 - 1) * theta;
        if beta >= 1.0 {
            return None;
        }
        let lead = -f64::from(parts[0].e) * (1.0 - qf.powf(next)).log2();
        Some(lead + log2_inner + f64::from(r as u32 - 1) * next.log2() + next * theta.log2() - (1.0 - beta).log2())
    };
    let mut n_max = 16u64;
    while tail_log2(n_max).is_none_or(|t| t > -(f64::from(bits) + 4.0)) {
        n_max = n_max * 5 / 4 + 1;
        if n_max > max_terms {
            return Err(Error::PrecisionUnreachable { digits: (f64::from(bits) * std::f64::consts::LOG10_2) as u32, max_terms });
        }
    }
    let prec = bits + 32;
    let qb = Ball::from_rational(q, prec);
    let one = Ball::from_int(1, prec);
    let mut acc = vec![Ball::zero(prec); r + 1];
    acc[r] = one.clone();
    let mut total = Ball::zero(prec);
    let mut qn = one.clone();
    for _ in 1..=n_max {
        qn = qn.mul_ball(&qb);
        let denom = (&one - &qn).recip().expect("q < 1");
        for j in 0..r {
            let p = parts[j];
            let t = qn.pow_u(p.a).mul_ball(&denom.pow_u(p.e));
            let inc = t.mul_ball(&acc[j + 1]);
            if j == 0 {
                total = total + inc;
            } else {
                acc[j] = &acc[j] + &inc;
            }
        }
    }
    let bound = tail_log2(n_max).expect("checked");
    Ok(total.add_error(&(Float::with_val(64, 1) << (bound.ceil() as i32 + 1))).set_prec(bits))
}

/// ζ[s_1,…,s_m] = Σ Π q^{(s_j-1) n_j} / [n_j]_q^{s_j}, [n]_q = (1 - q^n)/(1 - q).
pub fn eval_qmzv(q: &Rational, c: &SignedComposition, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    check_q(q)?;
    if !c.all_positive() {
        return Err(Error::UnsupportedSigns(c.to_string()));
    }
    if c.is_empty() || c.parts()[0].exp < 2 {
        return Err(Error::DivergentInput(format!("qzeta{c}")));
    }
    let parts: Vec<QPart> = c.parts().iter().map(|p| QPart { e: p.exp, a: p.exp - 1 }).collect();
    let bits = ctx.bits();
    let sum = nested_q_sum(q, &parts, bits, ctx.max_terms)?;
    let scale = Ball::from_rational(&Rational::from(1 - q), bits + 32).pow_u(c.weight());
    Ok(sum.mul_ball(&scale).set_prec(bits))
}

/// LHS - RHS of
/// Σ_k q^{2k}/(1-q^k)^{s+1} = Σ_{k>m} q^k/((1-q^k)^s (1-q^m))
///   + Σ_{j=1}^{s-2} Σ_{k>m} q^{k+m}/((1-q^k)^{s-j} (1-q^m)^{j+1}).
pub fn q_general_residual(q: &Rational, s: u32, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    check_q(q)?;
    if s < 2 {
        return Err(Error::OutOfRange(format!("s = {s} must be at least 2")));
    }
    let bits = ctx.bits();
    let mt = ctx.max_terms;
    let mut res = nested_q_sum(q, &[QPart { e: s + 1, a: 2 }], bits, mt)?;
    res = res - nested_q_sum(q, &[QPart { e: s, a: 1 }, QPart { e: 1, a: 0 }], bits, mt)?;
    for j in 1..=s.saturating_sub(2) {
        res = res - nested_q_sum(q, &[QPart { e: s - j, a: 1 }, QPart { e: j + 1, a: 1 }], bits, mt)?;
    }
    Ok(res)
}
