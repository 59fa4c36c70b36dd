use std::fmt;

use rug::Rational;

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::Result;
use crate::par;
use crate::series::mzv_bits;
use crate::wordcalc::{CompositionPolynomial, SignedComposition};

use super::constants::{normalize_bars, zeta_poly_eval_bits, zp_symbol, ConstSymbol, ZetaPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    EulerReduction,
    SumFormula,
    Decomposition,
    Drinfeld,
    Kummer,
    DoubleShuffle,
    Database,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::EulerReduction => "euler_reduction",
            Provenance::SumFormula => "sum_formula",
            Provenance::Decomposition => "decomposition",
            Provenance::Drinfeld => "drinfeld",
            Provenance::Kummer => "kummer",
            Provenance::DoubleShuffle => "double_shuffle",
            Provenance::Database => "database",
        }
    }
}

/// An asserted equality Σ c_i ζ(comp_i) = P(ζ(k), ζ(k̄), log 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: CompositionPolynomial,
    pub rhs: ZetaPolynomial,
    pub provenance: Provenance,
}

impl Relation {
    pub fn new(lhs: CompositionPolynomial, rhs: ZetaPolynomial, provenance: Provenance) -> Relation {
        Relation { lhs, rhs, provenance }
    }

    /// Depth-one terms moved to the right as ζ(k) / ζ(k̄) symbols.
    pub fn canonical(&self) -> Relation {
        let mut lhs = CompositionPolynomial::new();
        let mut rhs = self.rhs.clone();
        for (c, q) in self.lhs.terms() {
            if c.depth() == 1 {
                let p = c.parts()[0];
                let sym = if p.sign > 0 { ConstSymbol::Zeta(p.exp) } else { ConstSymbol::ZetaBar(p.exp) };
                rhs = rhs.sub(&zp_symbol(sym).scale(q));
            } else {
                lhs.add_term(c.clone(), q.clone());
            }
        }
        Relation { lhs, rhs, provenance: self.provenance }
    }

    /// Canonical form with ζ(k̄) rewritten through ζ(k) and log 2.
    pub fn reduced(&self) -> Relation {
        let c = self.canonical();
        Relation { rhs: normalize_bars(&c.rhs), ..c }
    }

    pub fn scale(&self, q: &Rational) -> Relation {
        Relation { lhs: self.lhs.scale(q), rhs: self.rhs.scale(q), provenance: self.provenance }
    }

    /// Sum of two relations (keeps the provenance of `self`).
    pub fn add(&self, other: &Relation) -> Relation {
        Relation { lhs: self.lhs.add(&other.lhs), rhs: self.rhs.add(&other.rhs), provenance: self.provenance }
    }

    /// True when both sides vanish after canonicalization.
    pub fn is_trivial(&self) -> bool {
        let c = self.reduced();
        c.lhs.is_empty() && c.rhs.is_empty()
    }

    /// Equal reduced forms up to a nonzero rational factor.
    pub fn same_up_to_scale(&self, other: &Relation) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        let pivot = |r: &Relation| -> Option<Rational> {
            r.lhs.terms().next().map(|(_, q)| q.clone()).or_else(|| r.rhs.terms().next().map(|(_, q)| q.clone()))
        };
        match (pivot(&a), pivot(&b)) {
            (None, None) => true,
            (Some(pa), Some(pb)) => {
                let f = pb / pa;
                let sa = a.scale(&f);
                sa.lhs == b.lhs && sa.rhs == b.rhs
            }
            _ => false,
        }
    }

    pub fn max_depth(&self) -> usize {
        self.lhs.max_depth()
    }

    /// Rendering in the expression grammar: `LHS == RHS`.
    pub fn render(&self) -> String {
        format!("{} == {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Σ c_i ζ(comp_i) with every value from the series engine.
pub fn composition_poly_eval(p: &CompositionPolynomial, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    composition_poly_eval_bits(p, ctx.bits())
}

pub(crate) fn composition_poly_eval_bits(p: &CompositionPolynomial, bits: u32) -> Result<Ball> {
    let prec = bits + 16;
    let terms: Vec<(SignedComposition, Rational)> = p.terms().map(|(c, q)| (c.clone(), q.clone())).collect();
    let values = par::map(&terms, |(c, q)| mzv_bits(c, prec).map(|b| b.mul_rational(q)));
    let mut total = Ball::zero(prec);
    for v in values {
        total = total + v?;
    }
    Ok(total.set_prec(bits))
}

/// eval(lhs) - eval(rhs); contains 0 for a true relation.
pub fn relation_residual(rel: &Relation, ctx: &PrecisionContext) -> Result<Ball> {
    ctx.validate()?;
    let bits = ctx.bits();
    let l = composition_poly_eval_bits(&rel.lhs, bits + 8)?;
    let r = zeta_poly_eval_bits(&rel.rhs, bits + 8)?;
    Ok((l - r).set_prec(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::constants::zp_zeta;

    fn comp(s: &str) -> SignedComposition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_moves_depth_one() {
        let mut lhs = CompositionPolynomial::monomial(comp("(2,1)"));
        lhs.add_term(comp("(3)"), Rational::from(-1));
        let r = Relation::new(lhs, ZetaPolynomial::new(), Provenance::Database).canonical();
        assert_eq!(r.render(), "zeta(2,1) == zeta(3)");
    }

    #[test]
    fn scale_invariance() {
        let a = Relation::new(CompositionPolynomial::monomial(comp("(2,1)")), zp_zeta(3), Provenance::Database);
        let b = a.scale(&Rational::from(-3));
        assert!(a.same_up_to_scale(&b));
        let c = Relation::new(CompositionPolynomial::monomial(comp("(2,1)")), zp_zeta(3).scale(&Rational::from(2)), Provenance::Database);
        assert!(!a.same_up_to_scale(&c));
    }

    #[test]
    fn residual_of_true_and_false_relations() {
        let ctx = PrecisionContext::new(20);
        let good = Relation::new(CompositionPolynomial::monomial(comp("(2,1)")), zp_zeta(3), Provenance::Database);
        assert!(relation_residual(&good, &ctx).unwrap().contains_zero());
        let bad = Relation::new(CompositionPolynomial::monomial(comp("(2,2)")), zp_zeta(4), Provenance::Database);
        assert!(!relation_residual(&bad, &ctx).unwrap().contains_zero());
    }
}
