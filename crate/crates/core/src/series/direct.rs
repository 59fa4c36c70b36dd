use rug::ops::Pow;
use rug::Float;

use crate::ball::Ball;
use crate::context::{Acceleration, PrecisionContext};
use crate::error::{Error, Result};
use crate::wordcalc::SignedComposition;

const OFFSETS: u64 = 6;
const SAMPLES: usize = 16;

/// Sums a series term by term up to `n_max` and estimates the limit from
/// partial sums. `term(n)` is called for n = 1, 2, … in order, so callers
/// may keep running state. The tail is modelled as a combination of
/// (ln n)^e / n^j for e ≤ `log_power` plus a (-1)^n copy of the same, which
/// the binomial averaging over consecutive partial sums removes. The
/// returned ball is always flagged empirical.
pub fn sum_accelerated(
    mut term: impl FnMut(u64) -> Float,
    n_max: u64,
    log_power: u32,
    mode: Acceleration,
    prec: u32,
) -> Ball {
    let n_max = n_max.max(64 * OFFSETS);
    let base = n_max - OFFSETS;
    let starts: Vec<u64> = (0..SAMPLES)
        .map(|i| ((base as f64) / 2f64.powf(i as f64 / 2.0)).round() as u64)
        .collect();
    // (sample index, offset) for each recorded n
    let mut wanted: Vec<(u64, usize, u64)> = Vec::new();
    for (i, &s) in starts.iter().enumerate() {
        for t in 0..=OFFSETS {
            wanted.push((s + t, i, t));
        }
    }
    wanted.sort();
    let mut raw = vec![vec![Float::new(prec); OFFSETS as usize + 1]; SAMPLES];
    let mut s = Float::with_val(prec, 0);
    let mut next = 0;
    for n in 1..=n_max {
        s += term(n);
        while next < wanted.len() && wanted[next].0 == n {
            let (_, i, t) = wanted[next];
            raw[i][t as usize] = s.clone();
            next += 1;
        }
    }
    let averaged: Vec<Float> = raw
        .iter()
        .map(|row| {
            let mut acc = Float::with_val(prec, 0);
            let mut binom = 1u64;
            for (t, v) in row.iter().enumerate() {
                acc += Float::with_val(prec, v * binom);
                binom = binom * (OFFSETS - t as u64) / (t as u64 + 1);
            }
            acc >> OFFSETS as u32
        })
        .collect();
    let abscissa: Vec<f64> = starts.iter().map(|&s| s as f64 + OFFSETS as f64 / 2.0).collect();

    let (mid, rad) = match mode {
        Acceleration::None => {
            let last = &raw[0][0];
            let half = &raw[2][0];
            let d = Float::with_val(prec, last - half).abs() * 2u32;
            (last.clone(), d)
        }
        Acceleration::AlternatingAverage => {
            let d = Float::with_val(prec, &averaged[0] - &averaged[2]).abs() * 2u32;
            (averaged[0].clone(), d)
        }
        Acceleration::EulerMaclaurin => {
            let cols = log_power as usize + 1;
            let max_j = ((SAMPLES - 3) / cols).clamp(1, 8);
            let fits: Vec<Float> = (1..=max_j)
                .map(|j| fit_limit(&abscissa, &averaged, j, log_power, prec))
                .collect();
            let best = fits[max_j - 1].clone();
            let spread = if max_j >= 2 {
                Float::with_val(prec, &fits[max_j - 1] - &fits[max_j - 2]).abs()
            } else {
                Float::with_val(prec, &averaged[0] - &best).abs()
            };
            (best, spread * 4u32)
        }
    };
    let floor = Float::with_val(64, 1) >> (prec - 16);
    Ball::new(mid, rad + floor).mark_empirical()
}

/// Least-squares fit of values ≈ L + Σ_{j≤J, e≤E} c_{je} (ln n)^e / n^j; returns L.
fn fit_limit(xs: &[f64], ys: &[Float], j_max: usize, log_power: u32, prec: u32) -> Float {
    let wp = prec * 2 + 64;
    let scale = xs[0];
    let mut cols: Vec<Vec<Float>> = vec![xs.iter().map(|_| Float::with_val(wp, 1)).collect()];
    for j in 1..=j_max {
        for e in 0..=log_power {
            cols.push(
                xs.iter()
                    .map(|&x| {
                        let l = Float::with_val(wp, x / scale).ln();
                        let base = Float::with_val(wp, scale / x).pow(j as u32);
                        base * l.pow(e)
                    })
                    .collect(),
            );
        }
    }
    let y: Vec<Float> = ys.iter().map(|v| Float::with_val(wp, v)).collect();
    least_squares_first(&cols, &y, wp)
}

/// Modified Gram–Schmidt QR; returns the coefficient of the first column.
fn least_squares_first(cols: &[Vec<Float>], y: &[Float], wp: u32) -> Float {
    let k = cols.len();
    let m = y.len();
    let mut q: Vec<Vec<Float>> = Vec::with_capacity(k);
    let mut r = vec![vec![Float::with_val(wp, 0); k]; k];
    for (i, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        for (p, qp) in q.iter().enumerate() {
            let dot = dot(qp, &v, wp);
            for t in 0..m {
                v[t] -= Float::with_val(wp, &qp[t] * &dot);
            }
            r[p][i] = dot;
        }
        let norm = dot(&v, &v, wp).sqrt();
        r[i][i] = norm.clone();
        q.push(v.into_iter().map(|x| x / &norm).collect());
    }
    let mut rhs: Vec<Float> = q.iter().map(|qp| dot(qp, y, wp)).collect();
    for i in (0..k).rev() {
        for c in i + 1..k {
            let t = Float::with_val(wp, &r[i][c] * &rhs[c]);
            rhs[i] -= t;
        }
        rhs[i] /= &r[i][i];
    }
    rhs.swap_remove(0)
}

fn dot(a: &[Float], b: &[Float], wp: u32) -> Float {
    let mut s = Float::with_val(wp, 0);
    for (x, y) in a.iter().zip(b) {
        s += Float::with_val(wp, x * y);
    }
    s
}

/// Direct nested summation of an Euler sum, all inner sums accumulated in
/// one outer loop, with the tail estimated per `ctx.acceleration`.
pub fn eval_mzv_direct(c: &SignedComposition, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    if !c.convergent() {
        return Err(Error::DivergentComposition(c.to_string()));
    }
    let prec = ctx.bits().min(192);
    let parts = c.parts().to_vec();
    let r = parts.len();
    // acc[j] = Σ over n > n_{j+1} > … of the terms of parts j..r
    let mut acc = vec![Float::with_val(prec, 0); r + 1];
    acc[r] = Float::with_val(prec, 1);
    let term = move |n: u64| {
        let inv = Float::with_val(prec, n).recip();
        let mut outer = Float::with_val(prec, 0);
        // ascending j reads acc[j + 1] before it absorbs term n
        for j in 0..r {
            let p = parts[j];
            let mut t = Float::with_val(prec, (&inv).pow(p.exp));
            if p.sign < 0 && n % 2 == 1 {
                t = -t;
            }
            let inc = t * &acc[j + 1];
            if j == 0 {
                outer = inc;
            } else {
                acc[j] += inc;
            }
        }
        outer
    };
    let log_power = c.parts().iter().skip(1).filter(|p| p.exp == 1 && p.sign > 0).count() as u32;
    let ball = sum_accelerated(term, ctx.max_terms, log_power, ctx.acceleration, prec);
    if ball.rad() > &ctx.target_radius() {
        return Err(Error::PrecisionUnreachable { digits: ctx.target_digits, max_terms: ctx.max_terms });
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::mzv::eval_mzv;

    fn comp(s: &str) -> SignedComposition {
        s.parse().unwrap()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(10).with_max_terms(200_000)
    }

    #[test]
    fn direct_agrees_with_convolution() {
        for c in ["(2,1)", "(-2,1)", "(2,-1)", "(3,1,1)", "(-1,-1)", "(2,2)"] {
            let c = comp(c);
            let d = eval_mzv_direct(&c, &ctx()).unwrap();
            let e = eval_mzv(&c, &PrecisionContext::new(30)).unwrap();
            assert!(d.is_empirical());
            assert!(d.overlaps(&e), "{c}: {d} vs {e}");
        }
    }

    #[test]
    fn geometric_tail_fit() {
        // Σ 1/n^2 with the fit against MPFR
        let prec = 128;
        let b = sum_accelerated(
            |n| Float::with_val(prec, n * n).recip(),
            20_000,
            0,
            Acceleration::EulerMaclaurin,
            prec,
        );
        assert!(b.contains(&Float::with_val(prec, Float::zeta_u(2))));
        assert!(b.rad_f64() < 1e-15, "{b}");
    }

    #[test]
    fn plain_truncation_is_loose_but_honest() {
        let prec = 128;
        let b = sum_accelerated(|n| Float::with_val(prec, n * n).recip(), 20_000, 0, Acceleration::None, prec);
        assert!(b.contains(&Float::with_val(prec, Float::zeta_u(2))));
    }
}
