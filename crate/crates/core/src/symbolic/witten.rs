use std::collections::HashMap;

use rug::Rational;

use crate::error::{Error, Result};
use crate::wordcalc::{stuffle, CompositionPolynomial, SignedComposition};

fn convergent(r: u32, s: u32, t: u32) -> bool {
    r + t > 1 && s + t > 1 && r + s + t > 2
}

/// W(r,s,t) as a combination of ζ values of depth ≤ 2, from
/// W(r,s,t) = W(r-1,s,t+1) + W(r,s-1,t+1), W(r,s,0) = ζ(r)ζ(s) (as a
/// stuffle), W(r,0,t) = W(0,r,t) = ζ(t,r) and W(0,0,t) = ζ(t-1) - ζ(t).
pub fn witten_reduce(r: i64, s: i64, t: i64) -> Result<CompositionPolynomial> {
    if r < 0 || s < 0 || t < 0 || !convergent(r as u32, s as u32, t as u32) {
        return Err(Error::NonConvergent(r, s, t));
    }
    let mut memo = HashMap::new();
    Ok(reduce(r as u32, s as u32, t as u32, &mut memo))
}

fn reduce(r: u32, s: u32, t: u32, memo: &mut HashMap<(u32, u32, u32), CompositionPolynomial>) -> CompositionPolynomial {
    // symmetry W(r,s,t) = W(s,r,t)
    let (r, s) = if r < s { (s, r) } else { (r, s) };
    if let Some(p) = memo.get(&(r, s, t)) {
        return p.clone();
    }
    let out = if t == 0 {
        stuffle(&SignedComposition::positive(&[r]), &SignedComposition::positive(&[s]))
    } else if s == 0 && r == 0 {
        let mut p = CompositionPolynomial::monomial(SignedComposition::positive(&[t - 1]));
        p.add_term(SignedComposition::positive(&[t]), Rational::from(-1));
        p
    } else if s == 0 {
        CompositionPolynomial::monomial(SignedComposition::positive(&[t, r]))
    } else {
        reduce(r - 1, s, t + 1, memo).add(&reduce(r, s - 1, t + 1, memo))
    };
    memo.insert((r, s, t), out.clone());
    out
}
