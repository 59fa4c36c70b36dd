use rug::Rational;

/// Both sides of the finite identity
/// Σ_{n≤N} 1/n^3 - Σ_{n≤N} H_{n-1}/n^2 = Σ_{n≤N} (1/n^2) Σ_{k=1}^n 1/(N-k+1),
/// the vanishing double sum T = Σ_{k≠n} 1/(nk(k-n)) behind it, and the
/// sandwich H_N/N ≤ RHS ≤ 2H_N/(N+1). All exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteZ21 {
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub t: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl FiniteZ21 {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.t == 0 && self.lower <= self.rhs && self.rhs <= self.upper
    }
}

pub fn finite_z21_check(n: u64) -> FiniteZ21 {
    assert!(n >= 1, "N must be positive");
    let inv = |k: u64| Rational::from((1, k));
    let mut lhs = Rational::new();
    let mut h = Rational::new();
    for k in 1..=n {
        let k2 = inv(k) * inv(k) ;
        lhs += &k2 * inv(k) ;
        lhs -= Rational::from(&k2 * &h);
        h += inv(k);
    }
    // reversed harmonic partial sums R_n = Σ_{k=1}^n 1/(N-k+1)
    let mut rhs = Rational::new();
    let mut r = Rational::new();
    for m in 1..=n {
        r += inv(n - m + 1);
        rhs += &r * inv(m * m) ;
    }
    let mut t = Rational::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                t += Rational::from((1, 1)) / (Rational::from(a * b) * Rational::from(b as i64 - a as i64));
            }
        }
    }
    let lower = Rational::from(&h / n);
    let upper = Rational::from(&h * 2u32) / (n + 1);
    FiniteZ21 { n, lhs, rhs, t, lower, upper }
}
