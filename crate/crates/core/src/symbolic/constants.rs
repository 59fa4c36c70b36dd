use std::fmt;

use rug::{Integer, Rational};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::series::zeta_bits;
use crate::wordcalc::{render_coeff, Linear};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstSymbol {
    Log2,
    Zeta(u32),
    ZetaBar(u32),
}

impl ConstSymbol {
    pub fn zeta(k: u32) -> Result<ConstSymbol> {
        if k < 2 {
            return Err(Error::DivergentInput(format!("zeta({k})")));
        }
        Ok(ConstSymbol::Zeta(k))
    }

    pub fn zeta_bar(k: u32) -> Result<ConstSymbol> {
        if k < 1 {
            return Err(Error::OutOfRange("zeta bar index must be positive".into()));
        }
        Ok(ConstSymbol::ZetaBar(k))
    }

    pub fn weight(&self) -> u32 {
        match self {
            ConstSymbol::Log2 => 1,
            ConstSymbol::Zeta(k) | ConstSymbol::ZetaBar(k) => *k,
        }
    }

    pub fn eval_bits(&self, bits: u32) -> Result<Ball> {
        match self {
            ConstSymbol::Log2 => Ok(Ball::ln2(bits)),
            ConstSymbol::Zeta(k) => zeta_bits(*k, 1, bits),
            ConstSymbol::ZetaBar(k) => zeta_bits(*k, -1, bits),
        }
    }
}

impl fmt::Display for ConstSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstSymbol::Log2 => write!(f, "log2"),
            ConstSymbol::Zeta(k) => write!(f, "zeta({k})"),
            ConstSymbol::ZetaBar(k) => write!(f, "zeta(-{k})"),
        }
    }
}

/// Sorted multiset of constant symbols; the empty monomial is 1.
pub type Monomial = Vec<ConstSymbol>;

/// Exact polynomial in ζ(k), ζ(k̄) and log 2.
pub type ZetaPolynomial = Linear<Monomial>;

pub fn zp_const(q: Rational) -> ZetaPolynomial {
    ZetaPolynomial::term(Vec::new(), q)
}

pub fn zp_symbol(s: ConstSymbol) -> ZetaPolynomial {
    ZetaPolynomial::monomial(vec![s])
}

pub fn zp_zeta(k: u32) -> ZetaPolynomial {
    zp_symbol(ConstSymbol::Zeta(k))
}

pub fn zp_mul(a: &ZetaPolynomial, b: &ZetaPolynomial) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            m.sort();
            out.add_term(m, Rational::from(ca * cb));
        }
    }
    out
}

pub fn zp_pow(a: &ZetaPolynomial, n: u32) -> ZetaPolynomial {
    (0..n).fold(zp_const(Rational::from(1)), |acc, _| zp_mul(&acc, a))
}

/// Rewrites ζ(k̄) in terms of ζ(k) (k ≥ 2) and log 2 (k = 1):
/// ζ(k̄) = -(1 - 2^{1-k}) ζ(k), ζ(1̄) = -log 2.
pub fn normalize_bars(p: &ZetaPolynomial) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::new();
    for (m, c) in p.terms() {
        let mut acc = zp_const(c.clone());
        for s in m {
            let factor = match *s {
                ConstSymbol::ZetaBar(1) => zp_symbol(ConstSymbol::Log2).scale(&Rational::from(-1)),
                ConstSymbol::ZetaBar(k) => {
                    let two_pow = Rational::from((Integer::from(1), Integer::from(1) << (k - 1)));
                    zp_zeta(k).scale(&(two_pow - Rational::from(1)))
                }
                other => zp_symbol(other),
            };
            acc = zp_mul(&acc, &factor);
        }
        out = out.add(&acc);
    }
    out
}

/// Evaluates every symbol through the series engine and combines exactly.
pub fn zeta_poly_eval(p: &ZetaPolynomial, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    zeta_poly_eval_bits(p, ctx.bits())
}

pub(crate) fn zeta_poly_eval_bits(p: &ZetaPolynomial, bits: u32) -> Result<Ball> {
    let prec = bits + 16;
    let mut total = Ball::zero(prec);
    for (m, c) in p.terms() {
        let mut v = Ball::from_int(1, prec);
        for s in m {
            v = v.mul_ball(&s.eval_bits(prec)?);
        }
        total = total + v.mul_rational(c);
    }
    Ok(total.set_prec(bits))
}

/// Renders a monomial, collecting repeated symbols into powers.
pub fn render_monomial(m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(m[i].to_string());
        } else {
            parts.push(format!("{}^{}", m[i], j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for Linear<Monomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms().enumerate() {
            let (sign, mag) = render_coeff(q, i == 0);
            if m.is_empty() {
                write!(f, "{sign}{}", Rational::from(q.abs_ref()))?;
            } else {
                write!(f, "{sign}{mag}{}", render_monomial(m))?;
            }
        }
        Ok(())
    }
}
