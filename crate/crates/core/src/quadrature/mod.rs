//! Adaptive Gauss–Legendre quadrature for the one-dimensional integral
//! representations, with exponential substitutions at singular endpoints.

mod engine;

pub use engine::{integrate_interval, integrate_raw, Integrand, Interval, Limit, Point};

use rug::ops::Pow;
use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::symbolic::{zp_zeta, ZetaPolynomial};

type Kernel = fn(&Point) -> Float;

pub struct CatalogEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub interval: Interval,
    pub integrand: Kernel,
    claimed: fn() -> ZetaPolynomial,
}

impl CatalogEntry {
    pub fn claimed_value(&self) -> ZetaPolynomial {
        (self.claimed)()
    }
}

/// ln(1 - x) on [0, 1] from whichever distance is accurate.
fn log_one_minus(p: &Point) -> Float {
    if p.to_lo < 0.5 {
        Float::with_val(p.x.prec(), -&p.to_lo).ln_1p()
    } else {
        p.to_hi.clone().ln()
    }
}

/// ln x on [0, 1].
fn log_x(p: &Point) -> Float {
    if p.to_hi < 0.5 {
        Float::with_val(p.x.prec(), -&p.to_hi).ln_1p()
    } else {
        p.to_lo.clone().ln()
    }
}

/// ln(2 sin(t/2)) for t in (0, 2π), using the nearer end.
fn log_two_sin(p: &Point) -> Float {
    let near = if p.to_lo <= p.to_hi { &p.to_lo } else { &p.to_hi };
    let s = Float::with_val(p.x.prec(), near / 2u32).sin() * 2u32;
    s.ln()
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

fn w111(p: &Point) -> Float {
    log_one_minus(p).square() / &p.x / 2u32
}

fn zeta_stirling_2(p: &Point) -> Float {
    log_one_minus(p).square() / &p.x / 2u32
}

fn zeta_stirling_3(p: &Point) -> Float {
    -(log_one_minus(p).pow(3u32) / &p.x) / 6u32
}

fn parts3(p: &Point) -> Float {
    log_x(p) * log_one_minus(p) / &p.x
}

fn logs21(p: &Point) -> Float {
    log_x(p) * log_one_minus(p) / &p.to_hi
}

fn triple57(p: &Point) -> Float {
    let prec = p.x.prec();
    let l = Float::with_val(prec, p.x.ln_1p_ref()).square();
    let d = Float::with_val(prec, &p.x * Float::with_val(prec, 1 + &p.x)) * Float::with_val(prec, 2 + &p.x);
    l / d * 4u32
}

fn alt21(p: &Point) -> Float {
    let prec = p.x.prec();
    Float::with_val(prec, p.x.ln_1p_ref()).square() / &p.x / 2u32
}

fn clausen_pi(p: &Point) -> Float {
    let prec = p.x.prec();
    let l = (Float::with_val(prec, &p.to_lo / 2u32).sin() * 2u32).ln();
    -(Float::with_val(prec, &p.to_hi * l)) / 2u32
}

fn parseval4(p: &Point) -> Float {
    let prec = p.x.prec();
    let pi_minus_t = Float::with_val(prec, &p.to_hi - &p.to_lo) / 2u32;
    let four_pi = Float::with_val(prec, Constant::Pi) * 4u32;
    pi_minus_t.square() * log_two_sin(p).square() / four_pi
}

fn z3() -> ZetaPolynomial {
    zp_zeta(3)
}

pub fn catalog() -> Vec<CatalogEntry> {
    let unit = |lo, hi| Interval::unit(lo, hi);
    vec![
        CatalogEntry { id: "w111", formula: "(1/2) int_0^1 log^2(1-s)/s ds", interval: unit(false, true), integrand: w111, claimed: z3 },
        CatalogEntry {
            id: "zeta_stirling_2",
            formula: "(1/2!) int_0^1 log^2(1-x)/x dx",
            interval: unit(false, true),
            integrand: zeta_stirling_2,
            claimed: z3,
        },
        CatalogEntry {
            id: "zeta_stirling_3",
            formula: "(-1/3!) int_0^1 log^3(1-x)/x dx",
            interval: unit(false, true),
            integrand: zeta_stirling_3,
            claimed: || zp_zeta(4),
        },
        CatalogEntry { id: "parts3", formula: "int_0^1 log(x) log(1-x)/x dx", interval: unit(true, true), integrand: parts3, claimed: z3 },
        CatalogEntry {
            id: "logs21",
            formula: "int_0^1 (-log u) (1-u)^-1 log((1-u)^-1) du",
            interval: unit(true, true),
            integrand: logs21,
            claimed: z3,
        },
        CatalogEntry {
            id: "triple57",
            formula: "4 int_0^inf log^2(u+1)/(u(u+1)(u+2)) du",
            interval: Interval { lo: Limit::Value(Rational::new()), hi: Limit::Infinity, lo_singular: false, hi_singular: false },
            integrand: triple57,
            claimed: z3,
        },
        CatalogEntry {
            id: "alt21",
            formula: "int_0^1 log^2(1+u)/(2u) du",
            interval: unit(false, false),
            integrand: alt21,
            claimed: || z3().scale(&q(1, 8)),
        },
        CatalogEntry {
            id: "clausen_pi",
            formula: "-(1/2) int_0^pi (pi-t) log(2 sin(t/2)) dt",
            interval: Interval { lo: Limit::Value(Rational::new()), hi: Limit::PiTimes(q(1, 1)), lo_singular: true, hi_singular: false },
            integrand: clausen_pi,
            claimed: || z3().scale(&q(7, 8)),
        },
        CatalogEntry {
            id: "parseval4",
            formula: "(1/(4 pi)) int_0^(2 pi) (pi-t)^2 log^2(2 sin(t/2)) dt",
            interval: Interval { lo: Limit::Value(Rational::new()), hi: Limit::PiTimes(q(2, 1)), lo_singular: true, hi_singular: true },
            integrand: parseval4,
            claimed: || zp_zeta(4).scale(&q(11, 4)),
        },
    ]
}

pub fn find_entry(id: &str) -> Result<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Integrates a catalog entry to absolute tolerance `tol`.
pub fn integrate(id: &str, tol: f64, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let entry = find_entry(id)?;
    if !(tol >= 1e-30 && tol.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance {tol:e} below 1e-30")));
    }
    let prec = ctx.bits();
    let f = entry.integrand;
    integrate_interval(&f, &entry.interval, tol, prec)
}

/// ∫_0^1 x^{r-1} (-ln x)^σ dx by quadrature; the exact value is σ!/r^{σ+1}.
pub fn laplace_moment(r: u32, sigma: u32, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    if r == 0 {
        return Err(Error::OutOfRange("r must be positive".into()));
    }
    let prec = ctx.bits();
    let f = move |p: &Point| {
        let l = -log_x(p);
        Float::with_val(prec, (&p.x).pow(r - 1)) * l.pow(sigma)
    };
    let tol = ctx.target_radius().to_f64().max(1e-30);
    integrate_interval(&f, &Interval::unit(sigma > 0, false), tol, prec)
}

/// σ!/r^{σ+1}.
pub fn laplace_exact(r: u32, sigma: u32) -> Rational {
    let num = Integer::from(Integer::factorial(sigma));
    let den = Integer::from(r).pow(sigma + 1);
    Rational::from((num, den))
}
