use rug::{Float, Integer, Rational};

use crate::ball::Ball;
use crate::context::{Acceleration, PrecisionContext};
use crate::error::{Error, Result};

use super::zeta::zeta_bits;

/// Unsigned Stirling numbers of the first kind u(n, m), 1 ≤ m ≤ n ≤ n_max,
/// built from u(n+1, m) = n·u(n, m) + u(n, m-1).
#[derive(Clone, Debug)]
pub struct StirlingTable {
    n_max: usize,
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> StirlingTable {
        // rows[n][m] for 0 ≤ m ≤ n, with u(0,0) = 1
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::from(1)]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![Integer::new(); n + 2];
            for m in 1..=n + 1 {
                let mut v = Integer::new();
                if m <= n {
                    v += Integer::from(&prev[m] * n as u64);
                }
                v += &prev[m - 1];
                next[m] = v;
            }
            rows.push(next);
        }
        StirlingTable { n_max, rows }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, m: usize) -> Result<&Integer> {
        if m == 0 || m > n || n > self.n_max {
            return Err(Error::OutOfRange(format!("u({n}, {m}) with n_max = {}", self.n_max)));
        }
        Ok(&self.rows[n][m])
    }
}

/// u(n, m), computed column-limited without storing the table.
pub fn stirling_u(n: usize, m: usize) -> Result<Integer> {
    if m == 0 || m > n {
        return Err(Error::OutOfRange(format!("u({n}, {m})")));
    }
    let mut row = vec![Integer::new(); m + 1];
    row[0] = Integer::from(1);
    for k in 0..n {
        for j in (1..=m.min(k + 1)).rev() {
            let t = Integer::from(&row[j] * k as u64) + &row[j - 1];
            row[j] = t;
        }
        row[0] = Integer::new();
    }
    Ok(row.swap_remove(m))
}

/// ∫_A^∞ (ln x)^p / x^2 dx = Σ_i p!/(p-i)! (ln A)^{p-i} / A.
fn log_moment(p: u32, a: f64) -> f64 {
    let l = a.ln();
    let mut s = 0.0;
    let mut f = 1.0;
    for i in 0..=p {
        s += f * l.powi((p - i) as i32);
        f *= f64::from(p - i);
    }
    s / a
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Partial sum Σ_{n≤N} u(n,m)/(n!·n) of the series for ζ(m+1), enclosed with
/// the remainder. Term n equals e_{m-1}(1, 1/2, …, 1/(n-1)) / n^2, which is
/// bounded above by (1 + ln n)^k/k! and below by
/// ((ln n)^k - C(k,2)·ζ(2)·(ln n)^{k-2})/k!, k = m - 1.
pub fn eval_zeta_via_stirling(m: u32, n_terms: u64) -> Result<Ball> {
    if m == 0 || n_terms < u64::from(m) {
        return Err(Error::OutOfRange(format!("m = {m}, N = {n_terms}")));
    }
    let prec = 128;
    let m_us = m as usize;
    // row[j] = u(n, j) for the current n, j ≤ m
    let mut row = vec![Integer::new(); m_us + 1];
    row[0] = Integer::from(1);
    let mut fact = Integer::from(1);
    let mut total = Ball::zero(prec);
    for n in 1..=n_terms {
        let k = n - 1;
        for j in (1..=m_us.min(n as usize)).rev() {
            let t = Integer::from(&row[j] * k) + &row[j - 1];
            row[j] = t;
        }
        row[0] = Integer::new();
        fact *= n;
        if n >= u64::from(m) {
            let num = Ball::from_integer(&row[m_us], prec);
            let den = Ball::from_integer(&Integer::from(&fact * n), prec);
            total = total + num.checked_div(&den).expect("positive");
        }
    }
    let k = m - 1;
    let nf = n_terms as f64;
    let e = std::f64::consts::E;
    if nf < (f64::from(k) / 2.0).exp() + 1.0 {
        return Err(Error::OutOfRange(format!("N = {n_terms} too small for the remainder bound")));
    }
    let upper = e * log_moment(k, e * nf) / factorial(k) * (1.0 + 1e-12);
    let c = f64::from(k * k.saturating_sub(1) / 2) * 1.6450;
    let lower = if k == 0 {
        1.0 / (nf + 1.0)
    } else if k == 1 {
        log_moment(1, nf + 1.0)
    } else {
        let p = (nf + 1.0).ln();
        let kf = f64::from(k);
        let cubic = -2.0 * p.powi(3) + kf * p * p + 2.0 * c * p - c * (kf - 2.0);
        let slope = -6.0 * p * p + 2.0 * kf * p + 2.0 * c;
        if cubic < 0.0 && slope < 0.0 {
            ((log_moment(k, nf + 1.0) - c * log_moment(k - 2, nf + 1.0)) / factorial(k)).max(0.0)
        } else {
            0.0
        }
    } * (1.0 - 1e-12);
    let tail = Ball::from_f64((upper + lower) / 2.0, prec).add_error_f64((upper - lower) / 2.0 * (1.0 + 1e-12));
    Ok(total + tail)
}

/// ζ(3) - (2ζ(2̄,1) - ζ(3̄)), with the alternating series
/// Σ (-1)^n (2H_{n-1}/n^2 - 1/n^3) summed directly.
pub fn butzer_m3_residual(ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let bits = ctx.bits();
    let prec = bits + 32;
    let d = |n: u64, h: &Ball| -> Ball {
        let n2 = Ball::from_int(n as i64, prec).sqr();
        let n3 = Ball::from_int(n as i64, prec).pow_u(3);
        h.mul_int(2).checked_div(&n2).unwrap() - n3.recip().unwrap()
    };
    let z3 = zeta_bits(3, 1, bits)?;
    let series = match ctx.acceleration {
        Acceleration::None => {
            // bracketing: d_n decreases for n ≥ 2
            let n_max = ctx.max_terms;
            let mut s = Ball::zero(prec);
            let mut h = Ball::zero(prec);
            for n in 1..=n_max {
                let t = d(n, &h);
                s = if n % 2 == 0 { s + t } else { s - t };
                h = h + Ball::from_rational(&Rational::from((1, n)), prec);
            }
            let next = d(n_max + 1, &h);
            let signed = if (n_max + 1).is_multiple_of(2) { next.clone() } else { next.neg() };
            let half = signed.mul_2si(-1);
            let mid = s + half.clone();
            mid.add_error(&half.abs_upper())
        }
        _ => {
            let n_max = 2000u64.min(ctx.max_terms);
            let depth = 24usize;
            let mut s = Ball::zero(prec);
            let mut h = Ball::zero(prec);
            let mut partial = Vec::new();
            for n in 1..=n_max + depth as u64 {
                let t = d(n, &h);
                s = if n % 2 == 0 { s + t } else { s - t };
                h = h + Ball::from_rational(&Rational::from((1, n)), prec);
                if n >= n_max {
                    partial.push(s.mid().clone());
                }
            }
            // repeated averaging of consecutive partial sums
            let mut level = partial;
            let mut previous = level[0].clone();
            while level.len() > 1 {
                previous = level[0].clone();
                level = level
                    .windows(2)
                    .map(|w| Float::with_val(prec, &w[0] + &w[1]) >> 1)
                    .collect();
            }
            let spread = Float::with_val(prec, &level[0] - &previous).abs() * 4u32;
            let rounding = Float::with_val(64, s.rad()) * 2u32;
            Ball::new(level[0].clone(), spread + rounding).mark_empirical()
        }
    };
    Ok((z3 - series).set_prec(bits))
}
