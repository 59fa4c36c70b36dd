use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::wordcalc::{stuffle, CompositionPolynomial, Linear, Part, SignedComposition};

use super::bivariate::{linear_power, BiSeries};
use super::constants::{zp_zeta, ZetaPolynomial};
use super::relation::{Provenance, Relation};

pub const MAX_ORDER: u32 = 12;

/// Coefficients of x^{m+1} y^{n+1} in 1 - exp(Σ_k (x^k + y^k - (x+y)^k) ζ(k)/k),
/// i.e. closed forms for ζ(m+2, {1}^n).
#[derive(Clone, Debug)]
pub struct DrinfeldTable {
    m_max: u32,
    n_max: u32,
    entries: Vec<Vec<ZetaPolynomial>>,
}

impl DrinfeldTable {
    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn entry(&self, m: u32, n: u32) -> Option<&ZetaPolynomial> {
        self.entries.get(m as usize).and_then(|row| row.get(n as usize))
    }

    /// ζ(m+2, {1}^n) = entry(m, n).
    pub fn relation(&self, m: u32, n: u32) -> Option<Relation> {
        let e = self.entry(m, n)?;
        let mut exps = vec![m + 2];
        exps.extend(std::iter::repeat_n(1, n as usize));
        Some(Relation::new(
            CompositionPolynomial::monomial(SignedComposition::positive(&exps)),
            e.clone(),
            Provenance::Drinfeld,
        ))
    }

    /// table(m, n) == table(n, m) wherever both are present.
    pub fn is_symmetric(&self) -> bool {
        let k = self.m_max.min(self.n_max);
        (0..=k).all(|m| (0..=k).all(|n| self.entry(m, n) == self.entry(n, m)))
    }
}

pub fn drinfeld_expand(m_max: u32, n_max: u32) -> Result<DrinfeldTable> {
    if m_max + n_max > MAX_ORDER {
        return Err(Error::OutOfRange(format!("drinfeld_expand needs M + N <= {MAX_ORDER}")));
    }
    let order = m_max + n_max + 2;
    let mut e = BiSeries::zero(order);
    for k in 2..=order {
        let row = linear_power(&Rational::from(1), &Rational::from(1), k);
        for i in 1..k {
            let c = -Rational::from(&row[i as usize]) / k;
            e.add_at(i, k - i, &zp_zeta(k).scale(&c));
        }
    }
    let f = e.exp();
    let entries = (0..=m_max)
        .map(|m| (0..=n_max).map(|n| f.get(m + 1, n + 1).scale(&Rational::from(-1))).collect())
        .collect();
    Ok(DrinfeldTable { m_max, n_max, entries })
}

/// k^{-e} times the truncated nested sum Σ_{k > j_1 > …} Π j_i^{-γ_i}.
type HarmonicKey = (u32, SignedComposition);
type HarmonicPoly = Linear<HarmonicKey>;

fn hp_one() -> HarmonicPoly {
    HarmonicPoly::monomial((0, SignedComposition::positive(&[])))
}

fn hp_mul(a: &HarmonicPoly, b: &HarmonicPoly) -> HarmonicPoly {
    let mut out = HarmonicPoly::new();
    for ((ea, ga), ca) in a.terms() {
        for ((eb, gb), cb) in b.terms() {
            let c = Rational::from(ca * cb);
            for (g, m) in stuffle(ga, gb).terms() {
                out.add_term((ea + eb, g.clone()), Rational::from(&c * m));
            }
        }
    }
    out
}

/// Compositions of n (positive parts), each as a vector.
fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// e_n over j < k: the strict sum with n unit exponents.
fn elementary(n: u32) -> HarmonicPoly {
    HarmonicPoly::monomial((0, SignedComposition::positive(&vec![1; n as usize])))
}

/// h_n over j ≤ k: Σ over compositions α of n of M_α(≤ k), with the top
/// index split off as M_α(≤ k) = M_α(< k) + k^{-α_1} M_{α_2…}(< k).
fn complete(n: u32) -> HarmonicPoly {
    if n == 0 {
        return hp_one();
    }
    let mut out = HarmonicPoly::new();
    for alpha in compositions(n) {
        out.add_term((0, SignedComposition::positive(&alpha)), Rational::from(1));
        out.add_term((alpha[0], SignedComposition::positive(&alpha[1..])), Rational::from(1));
    }
    out
}

/// Σ_k (-1)^k k^{-2-e} M_γ(< k) = ζ(overline{2+e}, γ).
fn sum_over_k(p: &HarmonicPoly) -> CompositionPolynomial {
    let mut out = CompositionPolynomial::new();
    for ((e, g), c) in p.terms() {
        out.add_term(g.prepend(Part::new(2 + e, -1)), c.clone());
    }
    out
}

/// Both sides of Kummer's theorem
///   ₂F₁(x, y; 1+x-y; -1) = Γ(1+x/2)Γ(1+x-y) / (Γ(1+x)Γ(1+x/2-y))
/// expanded to total degree `order`. The left side's k-th term is
/// (-1)^k xy/k² Π_{j<k}(1+x/j)(1+y/j) / Π_{j≤k}(1+(x-y)/j), so each
/// coefficient is a combination of alternating sums ζ(overline{2+e}, γ).
/// The right side is exp(Σ_k (-1)^k ζ(k)/k [(x/2)^k + (x-y)^k - x^k - (x/2-y)^k]).
#[derive(Clone, Debug)]
pub struct KummerExpansion {
    pub order: u32,
    coefficients: BTreeMap<(u32, u32), Relation>,
}

impl KummerExpansion {
    /// Relation from the coefficient of x^a y^b (a, b ≥ 1).
    pub fn coefficient(&self, a: u32, b: u32) -> Option<&Relation> {
        self.coefficients.get(&(a, b))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&(u32, u32), &Relation)> {
        self.coefficients.iter()
    }
}

/// Coefficients of γ·x and γ·y in the log of the gamma ratio; both vanish.
pub fn kummer_gamma_linear_coefficients() -> (Rational, Rational) {
    // arguments x/2, x - y, -x, -(x/2 - y), each contributing -γ·argument
    let args = [((1, 2), (0, 1)), ((1, 1), (-1, 1)), ((-1, 1), (0, 1)), ((-1, 2), (1, 1))];
    let mut cx = Rational::new();
    let mut cy = Rational::new();
    for (ax, ay) in args {
        cx -= Rational::from(ax);
        cy -= Rational::from(ay);
    }
    (cx, cy)
}

fn kummer_rhs(order: u32) -> BiSeries {
    let half = Rational::from((1, 2));
    let one = Rational::from(1);
    let zero = Rational::new();
    let mut e = BiSeries::zero(order);
    for k in 2..=order {
        let sign = if k % 2 == 0 { Rational::from(1) } else { Rational::from(-1) };
        let base = zp_zeta(k).scale(&(sign / k));
        let pieces = [
            (linear_power(&half, &zero, k), 1),
            (linear_power(&one, &-one.clone(), k), 1),
            (linear_power(&one, &zero, k), -1),
            (linear_power(&half, &-one.clone(), k), -1),
        ];
        for (row, s) in pieces {
            for (i, c) in row.iter().enumerate() {
                if *c != 0 {
                    e.add_at(i as u32, k - i as u32, &base.scale(&Rational::from(c * s)));
                }
            }
        }
    }
    e.exp()
}

pub fn kummer_expand(order: u32) -> Result<KummerExpansion> {
    if !(3..=MAX_ORDER).contains(&order) {
        return Err(Error::OutOfRange(format!("kummer_expand order must lie in 3..={MAX_ORDER}")));
    }
    let rhs = kummer_rhs(order);
    let mut coefficients = BTreeMap::new();
    for a in 1..order {
        for b in 1..=order - a {
            // [x^{a-1} y^{b-1}] of A(x) A(y) B(x - y)
            let (p, q) = (a - 1, b - 1);
            let mut inner = HarmonicPoly::new();
            for i in 0..=p {
                for j in 0..=q {
                    let (bp, bq) = (p - i, q - j);
                    // [x^bp y^bq] of Σ_n (-1)^n h_n (x - y)^n
                    let sign = if bp % 2 == 0 { 1 } else { -1 };
                    let c = Rational::from(Integer::from(Integer::binomial_u(bp + bq, bp)) * sign);
                    let term = hp_mul(&hp_mul(&elementary(i), &elementary(j)), &complete(bp + bq));
                    inner = inner.add(&term.scale(&c));
                }
            }
            let lhs = sum_over_k(&inner);
            coefficients.insert((a, b), Relation::new(lhs, rhs.get(a, b).clone(), Provenance::Kummer));
        }
    }
    Ok(KummerExpansion { order, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::PrecisionContext;
    use crate::symbolic::constants::zp_mul;
    use crate::symbolic::relation::relation_residual;

    #[test]
    fn drinfeld_low_entries() {
        let t = drinfeld_expand(3, 3).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.entry(0, 0).unwrap().to_string(), "zeta(2)");
        assert_eq!(t.relation(0, 1).unwrap().render(), "zeta(2,1) == zeta(3)");
        assert_eq!(t.entry(1, 1).unwrap().to_string(), "-1/2*zeta(2)^2 + 3/2*zeta(4)");
        assert_eq!(t.relation(0, 2).unwrap().render(), "zeta(2,1,1) == zeta(4)");
    }

    #[test]
    fn drinfeld_guard() {
        assert!(drinfeld_expand(7, 6).is_err());
        assert!(drinfeld_expand(6, 6).is_ok());
    }

    #[test]
    fn drinfeld_rows_against_euler_reduction() {
        // row n = 1 is ζ(m+2, 1): compare with 2ζ(m,1) = mζ(m+1) - …
        let t = drinfeld_expand(5, 1).unwrap();
        for m in 0..=5 {
            let er = crate::symbolic::euler_reduction(m + 2).unwrap();
            let half = er.rhs.scale(&Rational::from((1, 2)));
            assert_eq!(t.entry(m, 1).unwrap(), &half, "m={m}");
        }
    }

    #[test]
    fn drinfeld_numeric() {
        let ctx = PrecisionContext::new(15);
        let t = drinfeld_expand(3, 2).unwrap();
        for m in 0..=3 {
            for n in 0..=2 {
                let r = relation_residual(&t.relation(m, n).unwrap(), &ctx).unwrap();
                assert!(r.contains_zero() && r.rad_f64() < 1e-10, "({m},{n}): {r}");
            }
        }
    }

    #[test]
    fn gamma_constant_cancels() {
        assert_eq!(kummer_gamma_linear_coefficients(), (Rational::new(), Rational::new()));
    }

    #[test]
    fn kummer_xy2_is_2bar1() {
        let k = kummer_expand(3).unwrap();
        let r = k.coefficient(1, 2).unwrap();
        let target = Relation::new(
            CompositionPolynomial::term("(-2,1)".parse().unwrap(), Rational::from(8)),
            zp_zeta(3),
            Provenance::Kummer,
        );
        assert!(r.same_up_to_scale(&target), "{}", r.reduced());
    }

    #[test]
    fn kummer_x2y_numeric() {
        let k = kummer_expand(4).unwrap();
        let ctx = PrecisionContext::new(12);
        for (ab, r) in k.relations() {
            let res = relation_residual(r, &ctx).unwrap();
            assert!(res.contains_zero() && res.rad_f64() < 1e-8, "{ab:?}: {r} -> {res}");
        }
        assert!(!k.coefficient(2, 1).unwrap().lhs.is_empty());
    }

    #[test]
    fn complete_symmetric_small() {
        // h_1(≤ k) = M_1(< k) + 1/k
        assert_eq!(complete(1).len(), 2);
        let sq = hp_mul(&elementary(1), &elementary(1));
        // M_1^2 = 2 M_{1,1} + M_2
        assert_eq!(sq.len(), 2);
        let _ = zp_mul(&zp_zeta(2), &zp_zeta(2));
    }
}
