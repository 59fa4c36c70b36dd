use rug::Rational;

use super::constants::{zp_const, zp_mul, ZetaPolynomial};

/// Truncated power series Σ c_{ij} x^i y^j, i + j ≤ order, with
/// ZetaPolynomial coefficients stored as a dense triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: u32,
    coef: Vec<Vec<ZetaPolynomial>>,
}

impl BiSeries {
    pub fn zero(order: u32) -> BiSeries {
        let coef = (0..=order).map(|i| vec![ZetaPolynomial::new(); (order - i + 1) as usize]).collect();
        BiSeries { order, coef }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: u32, j: u32) -> &ZetaPolynomial {
        &self.coef[i as usize][j as usize]
    }

    pub fn add_at(&mut self, i: u32, j: u32, p: &ZetaPolynomial) {
        if i + j <= self.order {
            let slot = &mut self.coef[i as usize][j as usize];
            *slot = slot.add(p);
        }
    }

    pub fn scale(&self, q: &Rational) -> BiSeries {
        let mut out = self.clone();
        for row in &mut out.coef {
            for c in row.iter_mut() {
                *c = c.scale(q);
            }
        }
        out
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let mut out = self.clone();
        for i in 0..=self.order.min(other.order) {
            for j in 0..=self.order.min(other.order) - i {
                out.add_at(i, j, other.get(i, j));
            }
        }
        out
    }

    /// exp of a series without constant term, from the graded recurrence
    /// n F_n = Σ_{k=1}^n k E_k F_{n-k} (F_n, E_k homogeneous parts).
    pub fn exp(&self) -> BiSeries {
        debug_assert!(self.get(0, 0).is_empty(), "exp needs a zero constant term");
        let order = self.order;
        let mut f = BiSeries::zero(order);
        f.coef[0][0] = zp_const(Rational::from(1));
        for n in 1..=order {
            for i in 0..=n {
                let j = n - i;
                let mut acc = ZetaPolynomial::new();
                for k in 1..=n {
                    // Σ over E[i1][k-i1] F[i-i1][n-k-(i-i1)]
                    for i1 in 0..=k.min(i) {
                        let j1 = k - i1;
                        if j1 > j {
                            continue;
                        }
                        let e = self.get(i1, j1);
                        if e.is_empty() {
                            continue;
                        }
                        let g = f.get(i - i1, j - j1);
                        if g.is_empty() {
                            continue;
                        }
                        acc = acc.add(&zp_mul(e, g).scale(&Rational::from(k)));
                    }
                }
                f.coef[i as usize][j as usize] = acc.scale(&Rational::from((1, n)));
            }
        }
        f
    }
}

/// Coefficients of (αx + βy)^k: entry i is the coefficient of x^i y^{k-i}.
pub fn linear_power(alpha: &Rational, beta: &Rational, k: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut binom = rug::Integer::from(1);
    for i in 0..=k {
        let a = (0..i).fold(Rational::from(1), |acc, _| acc * alpha);
        let b = (0..k - i).fold(Rational::from(1), |acc, _| acc * beta);
        out.push((&binom * a) * b);
        binom = binom * (k - i) / (i + 1);
    }
    out
}
