use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rug::float::Constant;
use rug::{Float, Rational};

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::par;

const MAX_PANELS: usize = 6000;
const SAFETY: u32 = 4;

/// An evaluation point with its distances to the ends of the original
/// interval, computed without cancellation.
#[derive(Clone, Debug)]
pub struct Point {
    pub x: Float,
    pub to_lo: Float,
    pub to_hi: Float,
}

pub type Integrand<'a> = dyn Fn(&Point) -> Float + Sync + Send + 'a;

/// Interval end: a rational, a rational multiple of π, or +∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Value(Rational),
    PiTimes(Rational),
    Infinity,
}

impl Limit {
    fn to_float(&self, prec: u32) -> Option<Float> {
        match self {
            Limit::Value(q) => Some(Float::with_val(prec, q)),
            Limit::PiTimes(q) => Some(Float::with_val(prec, Constant::Pi) * q),
            Limit::Infinity => None,
        }
    }
}

/// Integration range with endpoint-singularity tags. A singular end gets the
/// exponential substitution x = end ∓ L·e^{-u}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Limit,
    pub hi: Limit,
    pub lo_singular: bool,
    pub hi_singular: bool,
}

impl Interval {
    pub fn unit(lo_singular: bool, hi_singular: bool) -> Interval {
        Interval {
            lo: Limit::Value(Rational::new()),
            hi: Limit::Value(Rational::from(1)),
            lo_singular,
            hi_singular,
        }
    }
}

static NODES: Lazy<Mutex<HashMap<(usize, u32), Arc<Vec<(Float, Float)>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Gauss–Legendre nodes and weights on [-1, 1], nodes in (0, 1) and the
/// centre only (the rule is symmetric).
fn gauss_legendre(n: usize, prec: u32) -> Arc<Vec<(Float, Float)>> {
    if let Some(v) = NODES.lock().unwrap().get(&(n, prec)) {
        return v.clone();
    }
    let wp = prec + 32;
    let pi = Float::with_val(wp, Constant::Pi);
    let mut out = Vec::new();
    for i in 1..=n.div_ceil(2) {
        // Chebyshev-like start, then Newton on P_n
        let guess = Float::with_val(wp, Float::with_val(wp, &pi * (i as f64 - 0.25)) / (n as f64 + 0.5)).cos();
        let mut x = guess;
        let mut dp = Float::new(wp);
        for _ in 0..200 {
            let (p, d) = legendre(n, &x, wp);
            let step = Float::with_val(wp, &p / &d);
            x -= &step;
            dp = d;
            if step.is_zero() || step.get_exp().is_none_or(|e| e < -(wp as i32) + 4) {
                let (_, d) = legendre(n, &x, wp);
                dp = d;
                break;
            }
        }
        let one_minus = Float::with_val(wp, 1) - Float::with_val(wp, x.square_ref());
        let w = Float::with_val(wp, 2) / (one_minus * dp.square());
        out.push((Float::with_val(prec, &x), Float::with_val(prec, &w)));
    }
    let arc = Arc::new(out);
    NODES.lock().unwrap().insert((n, prec), arc.clone());
    arc
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: &Float, wp: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(wp, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let a = Float::with_val(wp, x * &p1) * (2 * kf - 1);
        let b = Float::with_val(wp, &p0 * (kf - 1));
        let p2 = (a - b) / kf;
        p0 = std::mem::replace(&mut p1, p2);
    }
    let one_minus = Float::with_val(wp, 1) - Float::with_val(wp, x.square_ref());
    let d = (Float::with_val(wp, &p0 - Float::with_val(wp, x * &p1)) * n as u32) / one_minus;
    (p1, d)
}

/// A map from a parameter v on a finite range to the original variable.
type Mapped<'a> = dyn Fn(&Float) -> Option<(Point, Float)> + Sync + Send + 'a;

fn rule(g: &Mapped<'_>, f: &Integrand<'_>, a: &Float, b: &Float, n: usize, prec: u32) -> Float {
    let nodes = gauss_legendre(n, prec);
    let half = Float::with_val(prec, b - a) / 2u32;
    let centre = Float::with_val(prec, a + b) / 2u32;
    let mut s = Float::with_val(prec, 0);
    let mut eval = |t: Float, w: &Float| {
        if let Some((p, jac)) = g(&t) {
            let v = f(&p);
            if v.is_finite() {
                s += Float::with_val(prec, &v * &jac) * w;
            }
        }
    };
    for (i, (x, w)) in nodes.iter().enumerate() {
        let dx = Float::with_val(prec, x * &half);
        if n % 2 == 1 && i == nodes.len() - 1 {
            eval(centre.clone(), w);
        } else {
            eval(Float::with_val(prec, &centre + &dx), w);
            eval(Float::with_val(prec, &centre - &dx), w);
        }
    }
    s * half
}

struct Panel {
    a: Float,
    b: Float,
    whole: Float,
}

fn node_count(prec: u32) -> usize {
    (prec / 5 + 4) as usize
}

/// Adaptive composite Gauss–Legendre on [a, b] in the parameter v.
fn adaptive(g: &Mapped<'_>, f: &Integrand<'_>, a: Float, b: Float, tol: &Float, prec: u32) -> Result<Ball> {
    let n = node_count(prec);
    let pieces = 8u32;
    let width = Float::with_val(prec, &b - &a) / pieces;
    let mut panels: Vec<Panel> = (0..pieces)
        .map(|i| {
            let pa = Float::with_val(prec, &a + Float::with_val(prec, &width * i));
            let pb = if i + 1 == pieces { b.clone() } else { Float::with_val(prec, &a + Float::with_val(prec, &width * (i + 1))) };
            Panel { a: pa, b: pb, whole: Float::new(prec) }
        })
        .collect();
    let wholes = par::map(&panels, |p| rule(g, f, &p.a, &p.b, n, prec));
    for (p, w) in panels.iter_mut().zip(wholes) {
        p.whole = w;
    }
    let mut done_value = Float::with_val(prec, 0);
    let mut done_err = Float::with_val(64, 0);
    loop {
        // split every active panel into halves and compare
        let halves = par::map(&panels, |p| {
            let m = Float::with_val(prec, &p.a + &p.b) / 2u32;
            let l = rule(g, f, &p.a, &m, n, prec);
            let r = rule(g, f, &m, &p.b, n, prec);
            (m, l, r)
        });
        let mut errs = Vec::with_capacity(panels.len());
        let mut total_err = done_err.clone();
        for (p, (_, l, r)) in panels.iter().zip(&halves) {
            let e = Float::with_val(64, Float::with_val(prec, l + r) - &p.whole).abs();
            total_err += &e;
            errs.push(e);
        }
        let budget = Float::with_val(64, tol / SAFETY);
        let threshold = Float::with_val(64, &budget / (4 * panels.len().max(1) as u32));
        let mut next = Vec::new();
        for ((p, (m, l, r)), e) in panels.into_iter().zip(halves).zip(errs) {
            if total_err <= budget || e <= threshold {
                done_value += Float::with_val(prec, &l + &r);
                done_err += &e;
            } else {
                next.push(Panel { a: p.a, b: m.clone(), whole: l });
                next.push(Panel { a: m, b: p.b, whole: r });
            }
        }
        if next.is_empty() {
            let rad = done_err * SAFETY + (Float::with_val(64, 1) >> (prec - 8));
            return Ok(Ball::new(done_value, rad).mark_empirical());
        }
        if next.len() > MAX_PANELS {
            return Err(Error::ToleranceNotMet(format!("{}", tol.to_f64())));
        }
        panels = next;
    }
}

/// ∫ f over the interval with the substitutions implied by its tags.
/// The returned ball carries an empirical error estimate ≤ `tol`.
pub fn integrate_interval(f: &Integrand<'_>, iv: &Interval, tol: f64, prec: u32) -> Result<Ball> {
    let tol_f = Float::with_val(64, tol);
    let lo = iv.lo.to_float(prec).ok_or_else(|| Error::Domain("lower limit must be finite".into()))?;
    let Some(hi) = iv.hi.to_float(prec) else {
        // [lo, ∞) via x = lo + v/(1-v)
        let g = move |v: &Float| -> Option<(Point, Float)> {
            let one_minus = Float::with_val(prec, 1) - v;
            if one_minus <= 0 {
                return None;
            }
            let u = Float::with_val(prec, v / &one_minus);
            let jac = Float::with_val(prec, one_minus.square_ref()).recip();
            let x = Float::with_val(prec, &lo + &u);
            let inf = Float::with_val(prec, rug::float::Special::Infinity);
            Some((Point { x, to_lo: u, to_hi: inf }, jac))
        };
        return adaptive(&g, f, Float::with_val(prec, 0), Float::with_val(prec, 1), &tol_f, prec);
    };
    let len = Float::with_val(prec, &hi - &lo);
    match (iv.lo_singular, iv.hi_singular) {
        (false, false) => {
            let lo2 = lo.clone();
            let hi2 = hi.clone();
            let g = move |x: &Float| -> Option<(Point, Float)> {
                Some((
                    Point { x: x.clone(), to_lo: Float::with_val(prec, x - &lo2), to_hi: Float::with_val(prec, &hi2 - x) },
                    Float::with_val(prec, 1),
                ))
            };
            adaptive(&g, f, lo, hi, &tol_f, prec)
        }
        (true, false) => exp_side(f, &lo, &len, Float::with_val(prec, 0), true, &tol_f, prec),
        (false, true) => exp_side(f, &hi, &len, Float::with_val(prec, 0), false, &tol_f, prec),
        (true, true) => {
            let half = Float::with_val(prec, &len / 2u32);
            let half_tol = Float::with_val(64, &tol_f / 2u32);
            let a = exp_side(f, &lo, &half, half.clone(), true, &half_tol, prec)?;
            let b = exp_side(f, &hi, &half, half.clone(), false, &half_tol, prec)?;
            Ok(a + b)
        }
    }
}

/// Integral over the piece of length `len` next to the singular end `end`,
/// with x = end ± len·e^{-u}, u = v/(1-v). `beyond` is the distance from the
/// far side of the piece to the other end of the original interval.
fn exp_side(f: &Integrand<'_>, end: &Float, len: &Float, beyond: Float, at_lo: bool, tol: &Float, prec: u32) -> Result<Ball> {
    let end = end.clone();
    let len = len.clone();
    let cutoff = f64::from(prec) * 0.75 + 40.0;
    let g = move |v: &Float| -> Option<(Point, Float)> {
        let one_minus = Float::with_val(prec, 1) - v;
        if one_minus <= 0 {
            return None;
        }
        let u = Float::with_val(prec, v / &one_minus);
        if u.to_f64() > cutoff {
            return None;
        }
        let e = Float::with_val(prec, -&u).exp();
        let near = Float::with_val(prec, &len * &e);
        // len·(1 - e^{-u}) without cancellation
        let far = -Float::with_val(prec, Float::with_val(prec, -&u).exp_m1() * &len) + &beyond;
        let jac = Float::with_val(prec, &near / Float::with_val(prec, one_minus.square_ref()));
        let point = if at_lo {
            Point { x: Float::with_val(prec, &end + &near), to_lo: near, to_hi: far }
        } else {
            Point { x: Float::with_val(prec, &end - &near), to_lo: far, to_hi: near }
        };
        Some((point, jac))
    };
    adaptive(&g, f, Float::with_val(prec, 0), Float::with_val(prec, 1), tol, prec)
}

/// Plain adaptive Gauss–Legendre on [lo, hi] without any substitution.
pub fn integrate_raw(f: &Integrand<'_>, lo: &Rational, hi: &Rational, tol: f64, prec: u32) -> Result<Ball> {
    let lo_f = Float::with_val(prec, lo);
    let hi_f = Float::with_val(prec, hi);
    let (a, b) = (lo_f.clone(), hi_f.clone());
    let g = move |x: &Float| -> Option<(Point, Float)> {
        Some((
            Point { x: x.clone(), to_lo: Float::with_val(prec, x - &a), to_hi: Float::with_val(prec, &b - x) },
            Float::with_val(prec, 1),
        ))
    };
    adaptive(&g, f, lo_f, hi_f, &Float::with_val(64, tol), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let prec = 128;
        let f = |p: &Point| Float::with_val(prec, p.x.clone().pow(9u32));
        let b = integrate_interval(&f, &Interval::unit(false, false), 1e-30, prec).unwrap();
        assert!(b.overlaps(&Ball::from_rational(&Rational::from((1, 10)), prec)));
    }

    #[test]
    fn log_singularity_at_zero() {
        // ∫_0^1 ln x dx = -1
        let prec = 160;
        let f = |p: &Point| p.to_lo.clone().ln();
        let b = integrate_interval(&f, &Interval::unit(true, false), 1e-30, prec).unwrap();
        assert!(b.overlaps(&Ball::from_int(-1, prec)), "{b}");
        assert!(b.rad_f64() <= 1e-30);
    }

    #[test]
    fn half_line() {
        // ∫_0^∞ dx/(1+x)^2 = 1
        let prec = 128;
        let f = |p: &Point| Float::with_val(prec, 1 + &p.x).square().recip();
        let iv = Interval { lo: Limit::Value(Rational::new()), hi: Limit::Infinity, lo_singular: false, hi_singular: false };
        let b = integrate_interval(&f, &iv, 1e-25, prec).unwrap();
        assert!(b.overlaps(&Ball::from_int(1, prec)), "{b}");
    }
}
