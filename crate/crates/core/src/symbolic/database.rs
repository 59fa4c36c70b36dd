use rug::Rational;

use crate::wordcalc::{CompositionPolynomial, SignedComposition};

use super::constants::{zp_const, zp_mul, zp_symbol, zp_zeta, ConstSymbol, ZetaPolynomial};
use super::relation::{Provenance, Relation};

#[derive(Clone, Debug)]
pub struct DatabaseEntry {
    pub name: &'static str,
    pub relation: Relation,
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

fn lhs(items: &[(&[i64], Rational)]) -> CompositionPolynomial {
    let mut p = CompositionPolynomial::new();
    for (c, k) in items {
        p.add_term(SignedComposition::from_signed(c).expect("valid literal"), k.clone());
    }
    p
}

fn z2_log2() -> ZetaPolynomial {
    zp_mul(&zp_zeta(2), &zp_symbol(ConstSymbol::Log2))
}

/// Known closed forms and evaluations of low-weight sums.
pub fn database() -> Vec<DatabaseEntry> {
    let one = || Rational::from(1);
    let entry = |name, l: CompositionPolynomial, r: ZetaPolynomial| DatabaseEntry {
        name,
        relation: Relation::new(l, r, Provenance::Database),
    };
    vec![
        entry("z21", lhs(&[(&[2, 1], one())]), zp_zeta(3)),
        entry("z2bar1", lhs(&[(&[-2, 1], Rational::from(8))]), zp_zeta(3)),
        entry("dejavu", lhs(&[(&[-2, 1], Rational::from(2))]), zp_zeta(3).add(&zp_symbol(ConstSymbol::ZetaBar(3)))),
        entry("z31", lhs(&[(&[3, 1], one())]), zp_zeta(4).scale(&q(1, 4))),
        entry("z22", lhs(&[(&[2, 2], one())]), zp_zeta(4).scale(&q(3, 4))),
        entry("z211", lhs(&[(&[2, 1, 1], one())]), zp_zeta(4)),
        entry("z2_1bar", lhs(&[(&[2, -1], one())]), zp_zeta(3).sub(&z2_log2().scale(&q(3, 2)))),
        entry(
            "z2bar_1bar",
            lhs(&[(&[-2, -1], one())]),
            z2_log2().scale(&q(3, 2)).sub(&zp_zeta(3).scale(&q(13, 8))),
        ),
        entry(
            "z2bar_1bar_combo",
            lhs(&[(&[-2, -1], Rational::from(2))]),
            z2_log2().scale(&Rational::from(3)).sub(&zp_zeta(3).scale(&q(13, 4))),
        ),
        entry("dual_2121", lhs(&[(&[2, 1, 2, 1], one()), (&[3, 3], Rational::from(-1))]), zp_const(Rational::new())),
        entry("z1bar", lhs(&[(&[-1], one())]), zp_symbol(ConstSymbol::Log2).scale(&Rational::from(-1))),
    ]
}

pub fn database_entry(name: &str) -> Option<DatabaseEntry> {
    database().into_iter().find(|e| e.name == name)
}
