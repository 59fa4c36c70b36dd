use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use rug::Float;

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::par;
use crate::wordcalc::{comp_to_word, Letter, SignedComposition};

static CACHE: Lazy<Mutex<HashMap<(SignedComposition, u32), Ball>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// A form κ·dt/(z - t); `None` stands for dt/t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pole {
    z: i64,
    kappa: i64,
}

const B: Pole = Pole { z: 1, kappa: 1 };
const C: Pole = Pole { z: -1, kappa: 1 };
// image of c under t -> 1 - t
const D: Pole = Pole { z: 2, kappa: -1 };

type Form = Option<Pole>;

/// Splits a word into (m_j, pole_j) blocks: a^(m_j - 1) followed by the pole.
fn blocks(word: &[Form]) -> Vec<(u32, Pole)> {
    let mut out = Vec::new();
    let mut run = 0u32;
    for f in word {
        match f {
            None => run += 1,
            Some(p) => {
                out.push((run + 1, *p));
                run = 0;
            }
        }
    }
    debug_assert_eq!(run, 0);
    out
}

/// ∫_0^{1/2} of the word, as the nested sum Σ 2^{-n_1} Π κ_j z_j^{-(n_j - n_{j+1})} n_j^{-m_j}.
fn half_integral(word: &[Form], prec: u32) -> Ball {
    let bl = blocks(word);
    let r = bl.len();
    if r == 0 {
        return Ball::from_int(1, prec);
    }
    // |coefficient of t^n| ≤ (1 + ln n)^(r-1) / ((r-1)! n); once
    // n(1 + ln n) ≥ 2.5(r - 1) consecutive terms of the t = 1/2 series shrink
    // by at least 3/4, so the tail is at most 4 times its first term
    let log2_fact: f64 = (1..r).map(|k| (k as f64).log2()).sum();
    let log2_first = |n: u64| {
        let nn = n as f64;
        (r as f64 - 1.0) * (1.0 + nn.ln()).log2() - log2_fact - nn.log2() - nn + 2.0
    };
    let mut n_max = u64::from(prec) + 16;
    loop {
        let nn = (n_max + 1) as f64;
        if log2_first(n_max + 1) < -(f64::from(prec) + 8.0) && nn * (1.0 + nn.ln()) >= 2.5 * (r as f64 - 1.0) {
            break;
        }
        n_max += 16;
    }
    // w[j] = W_j(n), c[j] = coefficient of t^n for the suffix starting at block j
    let mut w = vec![Ball::zero(prec); r];
    let mut prev = vec![Ball::zero(prec); r + 1];
    prev[r] = Ball::from_int(1, prec);
    let mut total = Ball::zero(prec);
    for n in 1..=n_max {
        let mut cur = vec![Ball::zero(prec); r + 1];
        let inv_n = Ball::from_int(n as i64, prec).recip().expect("positive");
        for j in (0..r).rev() {
            let (m, pole) = bl[j];
            let s = &w[j] + &prev[j + 1];
            w[j] = match pole.z {
                1 => s,
                -1 => s.neg(),
                2 => s.mul_2si(-1),
                _ => unreachable!(),
            };
            let mut g = w[j].mul_ball(&inv_n.pow_u(m));
            if pole.kappa < 0 {
                g = g.neg();
            }
            cur[j] = g;
        }
        cur[r] = Ball::zero(prec);
        total = total + cur[0].mul_2si(-(n as i32));
        prev = cur;
    }
    let log2_bound = log2_first(n_max + 1);
    total.add_error(&(Float::with_val(64, 1) << (log2_bound.ceil() as i32)))
}

/// Hölder convolution: ∫_0^1 w = Σ_k ∫_{1/2}^1 w[..k] · ∫_0^{1/2} w[k..].
fn word_value(letters: &[Letter], prec: u32) -> Ball {
    let to_form = |l: &Letter| match l {
        Letter::A => None,
        Letter::B => Some(B),
        Letter::C => Some(C),
    };
    // under t -> 1 - t: a <-> b, c -> d, order reversed
    let reflect = |l: &Letter| match l {
        Letter::A => Some(B),
        Letter::B => None,
        Letter::C => Some(D),
    };
    let ks: Vec<usize> = (0..=letters.len()).collect();
    let parts = par::map(&ks, |&k| {
        let prefix: Vec<Form> = letters[..k].iter().rev().map(reflect).collect();
        let suffix: Vec<Form> = letters[k..].iter().map(to_form).collect();
        // the reflected prefix must end in a pole; it does since letters[0] != b
        half_integral(&prefix, prec).mul_ball(&half_integral(&suffix, prec))
    });
    crate::ball::sum(parts.iter(), prec)
}

/// ζ(s_1,…,s_m; σ_1,…,σ_m) = Σ_{n_1>…>n_m≥1} Π σ_j^{n_j} n_j^{-s_j}.
pub fn eval_mzv(c: &SignedComposition, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    mzv_bits(c, ctx.bits())
}

pub(crate) fn mzv_bits(c: &SignedComposition, bits: u32) -> Result<Ball> {
    if !c.convergent() {
        return Err(Error::DivergentComposition(c.to_string()));
    }
    if c.depth() == 1 {
        let p = c.parts()[0];
        return super::zeta::zeta_bits(p.exp, p.sign, bits);
    }
    if let Some(b) = CACHE.lock().unwrap().get(&(c.clone(), bits)) {
        return Ok(b.clone());
    }
    let word = comp_to_word(c)?;
    let prec = bits + 16 + 2 * c.weight();
    let value = word_value(word.letters(), prec).set_prec(bits);
    CACHE.lock().unwrap().insert((c.clone(), bits), value.clone());
    Ok(value)
}
