//! Midpoint-radius arithmetic on top of MPFR.
//!
//! The midpoint carries the working precision; the radius is a short float
//! that is always rounded upwards. Every operation adds the rounding error of
//! the new midpoint, so the exact image of the input balls stays enclosed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

const RAD_PREC: u32 = 40;

fn up<T>(val: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, val, Round::Up).0
}

fn down<T>(val: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, val, Round::Down).0
}

fn abs_up(x: &Float) -> Float {
    up(x.abs_ref())
}

fn abs_down(x: &Float) -> Float {
    down(x.abs_ref())
}

/// One ulp of `x` at its own precision; bounds the error of a correctly
/// rounded result.
fn ulp(x: &Float) -> Float {
    match x.get_exp() {
        Some(e) if !x.is_zero() => Float::with_val(RAD_PREC, 1) << (e - x.prec() as i32),
        _ => Float::new(RAD_PREC),
    }
}

fn radd(a: &Float, b: &Float) -> Float {
    up(a + b)
}

fn rmul(a: &Float, b: &Float) -> Float {
    up(a * b)
}

#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Float,
    empirical: bool,
}

impl Ball {
    pub fn new(mid: Float, rad: Float) -> Ball {
        let rad = abs_up(&rad);
        Ball { mid, rad, empirical: false }
    }

    pub fn exact(mid: Float) -> Ball {
        Ball { mid, rad: Float::new(RAD_PREC), empirical: false }
    }

    pub fn zero(prec: u32) -> Ball {
        Ball::exact(Float::new(prec))
    }

    pub fn from_int(n: i64, prec: u32) -> Ball {
        let mid = Float::with_val(prec, n);
        let rad = if prec >= 64 { Float::new(RAD_PREC) } else { ulp(&mid) };
        Ball { mid, rad, empirical: false }
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Ball {
        let mid = Float::with_val(prec, n);
        let rad = ulp(&mid);
        Ball { mid, rad, empirical: false }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Ball {
        let (mid, dir) = Float::with_val_round(prec, q, rug::float::Round::Nearest);
        let rad = if dir == std::cmp::Ordering::Equal { Float::new(RAD_PREC) } else { ulp(&mid) };
        Ball { mid, rad, empirical: false }
    }

    pub fn from_f64(x: f64, prec: u32) -> Ball {
        Ball::exact(Float::with_val(prec.max(53), x))
    }

    pub fn pi(prec: u32) -> Ball {
        let mid = Float::with_val(prec, Constant::Pi);
        let rad = ulp(&mid);
        Ball { mid, rad, empirical: false }
    }

    pub fn ln2(prec: u32) -> Ball {
        let mid = Float::with_val(prec, Constant::Log2);
        let rad = ulp(&mid);
        Ball { mid, rad, empirical: false }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_empirical(&self) -> bool {
        self.empirical
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_round(Round::Up)
    }

    /// Upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> Float {
        radd(&abs_up(&self.mid), &self.rad)
    }

    pub fn abs_upper_f64(&self) -> f64 {
        self.abs_upper().to_f64_round(Round::Up)
    }

    /// Lower bound on |x| over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Float {
        let d = down(abs_down(&self.mid) - &self.rad);
        if d.is_sign_negative() {
            Float::new(RAD_PREC)
        } else {
            d
        }
    }

    pub fn mark_empirical(mut self) -> Ball {
        self.empirical = true;
        self
    }

    pub fn with_empirical(mut self, flag: bool) -> Ball {
        self.empirical |= flag;
        self
    }

    pub fn add_error(mut self, err: &Float) -> Ball {
        self.rad = radd(&self.rad, &abs_up(err));
        self
    }

    pub fn add_error_f64(self, err: f64) -> Ball {
        let e = up(err);
        self.add_error(&e)
    }

    pub fn set_prec(mut self, prec: u32) -> Ball {
        let before = self.mid.clone();
        self.mid.set_prec(prec);
        let diff = up(&self.mid - &before);
        self.rad = radd(&self.rad, &abs_up(&diff));
        self
    }

    pub fn contains_zero(&self) -> bool {
        abs_down(&self.mid) <= self.rad
    }

    pub fn contains(&self, x: &Float) -> bool {
        let d = up(&self.mid - x);
        abs_down(&d) <= self.rad
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        let lo = self.mid.to_rational().unwrap() - self.rad.to_rational().unwrap();
        let hi = self.mid.to_rational().unwrap() + self.rad.to_rational().unwrap();
        lo <= *x && *x <= hi
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        let d = abs_down(&Float::with_val_round(self.prec().max(other.prec()), &self.mid - &other.mid, Round::Nearest).0);
        let slack = radd(&self.rad, &other.rad);
        let eps = ulp(&Float::with_val(self.prec().max(other.prec()), &self.mid - &other.mid));
        d <= radd(&slack, &eps)
    }

    /// True when every point of the ball lies within `tol` of zero.
    pub fn within(&self, tol: f64) -> bool {
        self.abs_upper() <= tol
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone(), empirical: self.empirical }
    }

    pub fn abs(&self) -> Ball {
        Ball { mid: Float::with_val(self.prec(), self.mid.abs_ref()), rad: self.rad.clone(), empirical: self.empirical }
    }

    fn finish(mid: Float, rad: Float, empirical: bool) -> Ball {
        let rad = radd(&rad, &ulp(&mid));
        Ball { mid, rad, empirical }
    }

    pub fn add_ball(&self, o: &Ball) -> Ball {
        let p = self.prec().max(o.prec());
        let mid = Float::with_val(p, &self.mid + &o.mid);
        Ball::finish(mid, radd(&self.rad, &o.rad), self.empirical | o.empirical)
    }

    pub fn sub_ball(&self, o: &Ball) -> Ball {
        let p = self.prec().max(o.prec());
        let mid = Float::with_val(p, &self.mid - &o.mid);
        Ball::finish(mid, radd(&self.rad, &o.rad), self.empirical | o.empirical)
    }

    pub fn mul_ball(&self, o: &Ball) -> Ball {
        let p = self.prec().max(o.prec());
        let mid = Float::with_val(p, &self.mid * &o.mid);
        let r1 = rmul(&abs_up(&self.mid), &o.rad);
        let r2 = rmul(&abs_up(&o.mid), &self.rad);
        let r3 = rmul(&self.rad, &o.rad);
        Ball::finish(mid, radd(&radd(&r1, &r2), &r3), self.empirical | o.empirical)
    }

    /// Division; `None` when the divisor ball contains zero.
    pub fn checked_div(&self, o: &Ball) -> Option<Ball> {
        let lower = o.abs_lower();
        if lower.is_zero() {
            return None;
        }
        let p = self.prec().max(o.prec());
        let mid = Float::with_val(p, &self.mid / &o.mid);
        // |a/b - A/B| <= (|A| rb + |B| ra) / (|B| (|B| - rb))
        let num = radd(&rmul(&abs_up(&self.mid), &o.rad), &rmul(&abs_up(&o.mid), &self.rad));
        let den = down(abs_down(&o.mid) * &lower);
        let rad = up(&num / &den);
        Some(Ball::finish(mid, rad, self.empirical | o.empirical))
    }

    pub fn recip(&self) -> Option<Ball> {
        Ball::from_int(1, self.prec()).checked_div(self)
    }

    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self.mul_ball(&Ball::from_rational(q, self.prec()))
    }

    pub fn mul_int(&self, n: i64) -> Ball {
        let mid = Float::with_val(self.prec(), &self.mid * n);
        let rad = rmul(&self.rad, &up(n.unsigned_abs()));
        Ball::finish(mid, rad, self.empirical)
    }

    pub fn div_int(&self, n: i64) -> Ball {
        assert!(n != 0, "division by zero");
        let mid = Float::with_val(self.prec(), &self.mid / n);
        let rad = up(&self.rad / down(n.unsigned_abs()));
        Ball::finish(mid, rad, self.empirical)
    }

    pub fn mul_2si(&self, k: i32) -> Ball {
        Ball {
            mid: Float::with_val(self.prec(), &self.mid << k),
            rad: up(&self.rad << k),
            empirical: self.empirical,
        }
    }

    pub fn sqr(&self) -> Ball {
        self.mul_ball(self)
    }

    pub fn pow_u(&self, n: u32) -> Ball {
        let mut result = Ball::from_int(1, self.prec());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ball(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        result.with_empirical(self.empirical)
    }

    pub fn exp(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.exp_ref());
        let rad = rmul(&abs_up(&mid), &up(self.rad.exp_m1_ref()));
        Ball::finish(mid, rad, self.empirical)
    }

    pub fn exp_m1(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.exp_m1_ref());
        let e = up(self.mid.exp_ref());
        let rad = rmul(&e, &up(self.rad.exp_m1_ref()));
        Ball::finish(mid, rad, self.empirical)
    }

    /// Natural logarithm; `None` unless the ball is strictly positive.
    pub fn ln(&self) -> Option<Ball> {
        let lower = down(&self.mid - &self.rad);
        if lower <= 0 {
            return None;
        }
        let mid = Float::with_val(self.prec(), self.mid.ln_ref());
        let rad = up(&self.rad / &lower);
        Some(Ball::finish(mid, rad, self.empirical))
    }

    /// log(1+x); `None` unless 1+x is strictly positive on the ball.
    pub fn ln_1p(&self) -> Option<Ball> {
        let lower = down(Float::with_val(RAD_PREC, 1) + down(&self.mid - &self.rad));
        if lower <= 0 {
            return None;
        }
        let mid = Float::with_val(self.prec(), self.mid.ln_1p_ref());
        let rad = up(&self.rad / &lower);
        Some(Ball::finish(mid, rad, self.empirical))
    }

    pub fn sqrt(&self) -> Option<Ball> {
        if self.mid <= 0 || down(&self.mid - &self.rad) < 0 {
            return None;
        }
        let mid = Float::with_val(self.prec(), self.mid.sqrt_ref());
        let rad = up(&self.rad / down(self.mid.sqrt_ref()));
        Some(Ball::finish(mid, rad, self.empirical))
    }

    pub fn sin(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.sin_ref());
        Ball::finish(mid, self.rad.clone(), self.empirical)
    }

    pub fn cos(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.cos_ref());
        Ball::finish(mid, self.rad.clone(), self.empirical)
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_string(&self, digits: usize) -> String {
        format_sci(&self.mid, digits)
    }

    pub fn rad_string(&self) -> String {
        format_sci(&self.rad, 3)
    }
}

pub fn format_sci(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    format!("{:.*e}", digits.max(1), x)
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{} ± {}", self.mid_string(digits), self.rad_string())?;
        if self.empirical {
            write!(f, " (empirical)")?;
        }
        Ok(())
    }
}

macro_rules! ball_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                self.$imp(rhs)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$imp(&rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                self.$imp(rhs)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$imp(&rhs)
            }
        }
    };
}

ball_binop!(Add, add, add_ball);
ball_binop!(Sub, sub, sub_ball);
ball_binop!(Mul, mul, mul_ball);

impl Div<&Ball> for &Ball {
    type Output = Ball;
    fn div(self, rhs: &Ball) -> Ball {
        self.checked_div(rhs).expect("division by a ball containing zero")
    }
}

impl Div<Ball> for Ball {
    type Output = Ball;
    fn div(self, rhs: Ball) -> Ball {
        &self / &rhs
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(&self)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

/// Sum of balls with a single accumulated radius.
pub fn sum<'a>(items: impl IntoIterator<Item = &'a Ball>, prec: u32) -> Ball {
    items.into_iter().fold(Ball::zero(prec), |acc, b| acc.add_ball(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_roundtrip_contains_input() {
        let x = Ball::from_rational(&Rational::from((7, 3)), 200);
        let y = x.exp().ln().unwrap();
        assert!(y.overlaps(&x));
        assert!(y.rad_f64() < 1e-55);
    }

    #[test]
    fn division_by_zero_ball_is_rejected() {
        let z = Ball::new(Float::with_val(64, 0), Float::with_val(64, 1e-3));
        assert!(Ball::from_int(1, 64).checked_div(&z).is_none());
    }

    #[test]
    fn radius_encloses_exact_third() {
        let third = Ball::from_int(1, 100).div_int(3);
        assert!(third.contains_rational(&Rational::from((1, 3))));
        let wide = Ball::from_int(1, 30).div_int(3);
        assert!(wide.contains_rational(&Rational::from((1, 3))));
    }

    #[test]
    fn pi_encloses_known_digits() {
        let pi = Ball::pi(128);
        let reference = Rational::from((
            "314159265358979323846264338327950288419716939937510".parse::<Integer>().unwrap(),
            Integer::from(Integer::u_pow_u(10, 50)),
        ));
        let gap = Ball::from_rational(&reference, 200) - &pi;
        assert!(gap.within(1e-35));
    }

    #[test]
    fn sin_cos_pythagoras() {
        let x = Ball::from_rational(&Rational::from((5, 7)), 150);
        let one = x.sin().sqr() + x.cos().sqr();
        assert!(one.contains(&Float::with_val(150, 1)));
    }
}
