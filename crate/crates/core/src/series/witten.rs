use rug::ops::Pow;
use rug::Float;

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval, Interval, Point};

use super::polylog::polylog_ball;
use super::zeta::zeta_bits;

/// W(r,s,t) = Σ_{m,n≥1} m^{-r} n^{-s} (m+n)^{-t}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WittenParams {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl WittenParams {
    pub fn new(r: i64, s: i64, t: i64) -> WittenParams {
        WittenParams { r, s, t }
    }

    pub fn convergent(&self) -> bool {
        self.r + self.t > 1 && self.s + self.t > 1 && self.r + self.s + self.t > 2
    }

    fn check(&self) -> Result<(u32, u32, u32)> {
        if self.r < 0 || self.s < 0 || self.t < 0 {
            return Err(Error::OutOfRange(format!("W({}, {}, {}) needs nonnegative arguments", self.r, self.s, self.t)));
        }
        if !self.convergent() {
            return Err(Error::DivergentInput(format!("W({}, {}, {})", self.r, self.s, self.t)));
        }
        Ok((self.r as u32, self.s as u32, self.t as u32))
    }
}

/// -ln σ on (0, 1).
fn minus_log(p: &Point) -> Float {
    if p.to_hi < 0.5 {
        -Float::with_val(p.x.prec(), -&p.to_hi).ln_1p()
    } else {
        -p.to_lo.clone().ln()
    }
}

/// W(r,s,t) = 1/(t-1)! ∫_0^1 Li_r(σ) Li_s(σ) (-ln σ)^{t-1} dσ/σ for t ≥ 1,
/// and ζ(r)ζ(s) for t = 0. The quadrature estimate makes the ball empirical.
pub fn eval_witten(p: WittenParams, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let (r, s, t) = p.check()?;
    let bits = ctx.bits();
    if t == 0 {
        return Ok(zeta_bits(r, 1, bits)?.mul_ball(&zeta_bits(s, 1, bits)?));
    }
    let prec = bits;
    let f = move |pt: &Point| -> Float {
        let x = Ball::exact(pt.x.clone());
        let om = Ball::exact(pt.to_hi.clone());
        let (Ok(a), Ok(b)) = (polylog_ball(r, &x, &om, prec), polylog_ball(s, &x, &om, prec)) else {
            return Float::with_val(prec, 0);
        };
        let prod = a.mul_ball(&b).mid().clone();
        prod * minus_log(pt).pow(t - 1) / &pt.x
    };
    let tol = ctx.target_radius().to_f64().max(1e-30);
    let integral = integrate_interval(&f, &Interval::unit(true, true), tol, prec)?;
    let fact: u64 = (1..u64::from(t)).product();
    Ok(integral.div_int(fact as i64))
}

/// Σ_{m<k} m^{-r} ≤ constant · k^extra · (1 + ln k)^[log].
fn harmonic_bound(r: u32) -> (f64, u32, bool) {
    match r {
        0 => (1.0, 1, false),
        1 => (1.0, 0, true),
        _ => (1.0 + 1.0 / f64::from(r - 1), 0, false),
    }
}

/// ∫_K^∞ x^{-α} (1 + ln x)^β dx for β ∈ {0, 1}, α > 1.
fn tail_integral(alpha: f64, log: bool, k: f64) -> f64 {
    let a1 = alpha - 1.0;
    let base = k.powf(-a1);
    if log {
        base * ((1.0 + k.ln()) / a1 + 1.0 / (a1 * a1))
    } else {
        base / a1
    }
}

/// Brute-force double sum over m + n ≤ K with a rigorous bound for the
/// rest: Σ_{m+n=k} m^{-r} n^{-s} ≤ (2/k)^s Σ_{m<k} m^{-r} + (2/k)^r Σ_{n<k} n^{-s}.
pub fn witten_direct(p: WittenParams, k_max: u64) -> Result<Ball> {
    let (r, s, t) = p.check()?;
    let prec = 128;
    let mut total = Float::with_val(prec, 0);
    let mut terms = 0u64;
    if r == 0 || s == 0 {
        let e = if r == 0 { s } else { r };
        // Σ_k k^{-t} Σ_{m<k} m^{-e} (n = k - m contributes 1)
        let mut inner = Float::with_val(prec, 0);
        for k in 2..=k_max {
            let m = Float::with_val(prec, k - 1);
            inner += m.pow(e).recip();
            let kk = Float::with_val(prec, k).pow(t);
            total += Float::with_val(prec, &inner / kk);
            terms += 1;
        }
    } else {
        for k in 2..=k_max {
            let mut c = 0.0f64;
            let kf = k as f64;
            for m in 1..k {
                let n = (k - m) as f64;
                c += 1.0 / ((m as f64).powi(r as i32) * n.powi(s as i32));
            }
            total += c / kf.powi(t as i32);
            terms += k;
        }
    }
    let kf = k_max as f64;
    let mut tail = 0.0;
    for (outer, inner) in [(s, r), (r, s)] {
        let (constant, extra, log) = harmonic_bound(inner);
        let alpha = f64::from(t + outer) - f64::from(extra);
        if alpha <= 1.0 {
            return Err(Error::DivergentInput("tail bound needs faster decay".into()));
        }
        tail += 2f64.powi(outer as i32) * constant * tail_integral(alpha, log, kf);
    }
    let rounding = terms as f64 * 1e-15 * total.to_f64().abs().max(1.0);
    // the tail is positive: centre the ball on [S, S + tail]
    let mid = total + tail / 2.0;
    Ok(Ball::new(mid, Float::with_val(64, tail / 2.0 + rounding) * 1.000001))
}
