use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::wordcalc::{CompositionPolynomial, SignedComposition};

use super::constants::{zp_mul, zp_zeta};
use super::relation::{Provenance, Relation};

fn binom(n: u32, k: u32) -> Rational {
    Rational::from(Integer::from(Integer::binomial_u(n, k)))
}

fn pos(exps: &[u32]) -> SignedComposition {
    SignedComposition::positive(exps)
}

/// 2ζ(m,1) = mζ(m+1) - Σ_{j=1}^{m-2} ζ(j+1)ζ(m-j).
pub fn euler_reduction(m: u32) -> Result<Relation> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("euler_reduction needs m >= 2, got {m}")));
    }
    let lhs = CompositionPolynomial::term(pos(&[m, 1]), Rational::from(2));
    let mut rhs = zp_zeta(m + 1).scale(&Rational::from(m));
    for j in 1..=m.saturating_sub(2) {
        rhs = rhs.sub(&zp_mul(&zp_zeta(j + 1), &zp_zeta(m - j)));
    }
    Ok(Relation::new(lhs, rhs, Provenance::EulerReduction))
}

/// All (a_1, …, a_r) with a_i ≥ 0 and Σ a_i = s, in lexicographic order.
fn weak_compositions(s: u32, r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in weak_compositions(s - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Σ_{a_1+…+a_r = s} ζ(a_1+2, a_2+1, …, a_r+1) = ζ(r+s+1).
pub fn sum_formula(r: u32, s: u32) -> Result<Relation> {
    if r < 1 || (r == 1 && s == 0) {
        return Err(Error::OutOfRange(format!("sum_formula needs r >= 1 and weight >= 2, got r={r}, s={s}")));
    }
    let mut lhs = CompositionPolynomial::new();
    for a in weak_compositions(s, r) {
        let exps: Vec<u32> = a.iter().enumerate().map(|(i, &x)| x + if i == 0 { 2 } else { 1 }).collect();
        lhs.add_term(pos(&exps), Rational::from(1));
    }
    Ok(Relation::new(lhs, zp_zeta(r + s + 1), Provenance::SumFormula))
}

/// ζ(n) = Σ_{j=1}^{n-2} ζ(n-j, j), written out directly.
pub fn depth_two_sum(n: u32) -> Result<Relation> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("depth-two sum needs n >= 3, got {n}")));
    }
    let mut lhs = CompositionPolynomial::new();
    for j in 1..=n - 2 {
        lhs.add_term(pos(&[n - j, j]), Rational::from(1));
    }
    Ok(Relation::new(lhs, zp_zeta(n), Provenance::SumFormula))
}

/// ζ(s,t) = (-1)^t Σ_{r=0}^{s-2} C(t+r-1,t-1) ζ(s-r,t+r)
///        + Σ_{r=0}^{t-2} (-1)^r C(s+r-1,s-1) ζ(t-r)ζ(s+r)
///        - (-1)^t C(s+t-2,s-1) (ζ(s+t) + ζ(s+t-1,1)).
pub fn euler_decomposition(s: u32, t: u32) -> Result<Relation> {
    if s < 2 || t < 1 {
        return Err(Error::OutOfRange(format!("euler_decomposition needs s >= 2, t >= 1, got ({s}, {t})")));
    }
    let sign_t = if t.is_multiple_of(2) { Rational::from(1) } else { Rational::from(-1) };
    let mut lhs = CompositionPolynomial::monomial(pos(&[s, t]));
    for r in 0..=s - 2 {
        lhs.add_term(pos(&[s - r, t + r]), -(&sign_t * binom(t + r - 1, t - 1)));
    }
    let last = &sign_t * binom(s + t - 2, s - 1) ;
    lhs.add_term(pos(&[s + t - 1, 1]), last.clone());
    let mut rhs = zp_zeta(s + t).scale(&-last);
    for r in 0..t.saturating_sub(1) {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = binom(s + r - 1, s - 1) * sign;
        rhs = rhs.add(&zp_mul(&zp_zeta(t - r), &zp_zeta(s + r)).scale(&c));
    }
    Ok(Relation::new(lhs, rhs, Provenance::Decomposition))
}

/// Both sides of the partial fraction expansion of 1/(x^s (x-α)^t).
pub fn parfrac_sides(s: u32, t: u32, alpha: &Rational, x: &Rational) -> Result<(Rational, Rational)> {
    if s < 1 || t < 1 {
        return Err(Error::OutOfRange("parfrac needs s, t >= 1".into()));
    }
    if *alpha == 0 || *x == 0 || alpha == x {
        return Err(Error::OutOfRange("parfrac needs distinct nonzero alpha and x".into()));
    }
    let pw = |b: &Rational, e: u32| -> Rational { (0..e).fold(Rational::from(1), |acc, _| acc * b) };
    let d = Rational::from(x - alpha);
    let lhs = Rational::from(1) / (pw(x, s) * pw(&d, t));
    let sign_t: i32 = if t.is_multiple_of(2) { 1 } else { -1 };
    let mut rhs = Rational::new();
    for r in 0..s {
        rhs += binom(t + r - 1, t - 1) * sign_t / (pw(x, s - r) * pw(alpha, t + r));
    }
    for r in 0..t {
        let sign: i32 = if r % 2 == 0 { 1 } else { -1 };
        rhs += binom(s + r - 1, s - 1) * sign / (pw(alpha, s + r) * pw(&d, t - r));
    }
    Ok((lhs, rhs))
}

/// Exact rational check of the partial fraction expansion.
pub fn parfrac_check(s: u32, t: u32, alpha: &Rational, x: &Rational) -> Result<bool> {
    let (l, r) = parfrac_sides(s, t, alpha, x)?;
    Ok(l == r)
}
