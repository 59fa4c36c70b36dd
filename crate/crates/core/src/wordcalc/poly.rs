use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::composition::SignedComposition;
use super::word::{Letter, Word};

/// Exact rational linear combination of keys with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Linear<K> {
    fn default() -> Self {
        Linear { terms: BTreeMap::new() }
    }
}

pub type WordPolynomial = Linear<Word>;
pub type CompositionPolynomial = Linear<SignedComposition>;

impl<K: Ord + Clone> Linear<K> {
    pub fn new() -> Self {
        Linear { terms: BTreeMap::new() }
    }

    pub fn monomial(k: K) -> Self {
        Self::term(k, Rational::from(1))
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut p = Self::new();
        p.add_term(k, c);
        p
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::new();
        for (k, c) in self.terms() {
            out.add_term(k.clone(), Rational::from(c * s));
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::new(), |acc, c| acc + c)
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> Linear<L> {
        let mut out = Linear::new();
        for (k, c) in self.terms() {
            out.add_term(f(k), c.clone());
        }
        out
    }
}

impl WordPolynomial {
    pub fn letter(l: Letter) -> WordPolynomial {
        Linear::monomial(Word::new(vec![l]))
    }

    /// Noncommutative product (concatenation, extended bilinearly).
    pub fn concat_mul(&self, other: &WordPolynomial) -> WordPolynomial {
        let mut out = WordPolynomial::new();
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                out.add_term(u.concat(v), Rational::from(cu * cv));
            }
        }
        out
    }

    pub fn unit() -> WordPolynomial {
        Linear::monomial(Word::empty())
    }

    /// Common word length, if all terms share one.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }
}

impl CompositionPolynomial {
    pub fn all_convergent(&self) -> bool {
        self.keys().all(SignedComposition::convergent)
    }

    pub fn max_depth(&self) -> usize {
        self.keys().map(SignedComposition::depth).max().unwrap_or(0)
    }
}

/// Coefficient prefix for rendering: "", "-", "3*", "-1/2*" and so on.
pub fn render_coeff(c: &Rational, first: bool) -> (String, String) {
    let sign = if *c < 0 {
        if first { "-".to_string() } else { " - ".to_string() }
    } else if first {
        String::new()
    } else {
        " + ".to_string()
    };
    let a = Rational::from(c.abs_ref());
    let mag = if a == 1 { String::new() } else { format!("{a}*") };
    (sign, mag)
}

impl fmt::Display for Linear<Word> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let (sign, mag) = render_coeff(c, i == 0);
            let body = if w.is_empty() { "1".to_string() } else { w.to_string() };
            if w.is_empty() && !mag.is_empty() {
                write!(f, "{sign}{}", &mag[..mag.len() - 1])?;
            } else {
                write!(f, "{sign}{mag}{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Linear<SignedComposition> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, q)) in self.terms().enumerate() {
            let (sign, mag) = render_coeff(q, i == 0);
            write!(f, "{sign}{mag}zeta({})", c.args())?;
        }
        Ok(())
    }
}
