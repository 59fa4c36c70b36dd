use rug::Rational;

use super::composition::{Part, SignedComposition};
use super::poly::{CompositionPolynomial, WordPolynomial};
use super::word::Word;

/// Shuffle product: all interleavings of `u` and `v` that keep the internal
/// order of each word.
pub fn shuffle(u: &Word, v: &Word) -> WordPolynomial {
    let (a, b) = (u.letters(), v.letters());
    // table[i][j] = shuffle of a[i..] with b[j..]
    let mut table: Vec<Vec<WordPolynomial>> = vec![vec![WordPolynomial::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            table[i][j] = if i == a.len() {
                WordPolynomial::monomial(Word::new(b[j..].to_vec()))
            } else if j == b.len() {
                WordPolynomial::monomial(Word::new(a[i..].to_vec()))
            } else {
                let left = prefix_letter(a[i], &table[i + 1][j]);
                let right = prefix_letter(b[j], &table[i][j + 1]);
                left.add(&right)
            };
        }
    }
    std::mem::take(&mut table[0][0])
}

fn prefix_letter(l: super::word::Letter, p: &WordPolynomial) -> WordPolynomial {
    let head = Word::new(vec![l]);
    p.map_keys(|w| head.concat(w))
}

fn merge(p: Part, q: Part) -> Part {
    Part::new(p.exp + q.exp, p.sign * q.sign)
}

/// Quasi-shuffle (stuffle) product of nested sums.
pub fn stuffle(u: &SignedComposition, v: &SignedComposition) -> CompositionPolynomial {
    let (a, b) = (u.parts(), v.parts());
    let mut table: Vec<Vec<CompositionPolynomial>> =
        vec![vec![CompositionPolynomial::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            table[i][j] = if i == a.len() {
                CompositionPolynomial::monomial(SignedComposition::new(b[j..].to_vec()))
            } else if j == b.len() {
                CompositionPolynomial::monomial(SignedComposition::new(a[i..].to_vec()))
            } else {
                let x = table[i + 1][j].map_keys(|c| c.prepend(a[i]));
                let y = table[i][j + 1].map_keys(|c| c.prepend(b[j]));
                let z = table[i + 1][j + 1].map_keys(|c| c.prepend(merge(a[i], b[j])));
                x.add(&y).add(&z)
            };
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Total multiplicity of a polynomial with nonnegative integer coefficients.
pub fn multiplicity(p: &WordPolynomial) -> Rational {
    p.coefficient_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(s: &str) -> SignedComposition {
        s.parse().unwrap()
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&w("ab"), &w("b")).to_string(), "2*abb + bab");
        assert_eq!(shuffle(&w("ac"), &w("c")).to_string(), "2*acc + cac");
        assert_eq!(shuffle(&w("ab"), &w("c")).to_string(), "abc + acb + cab");
        assert_eq!(shuffle(&w(""), &w("ab")).to_string(), "ab");
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(stuffle(&c("(2)"), &c("(1)")).to_string(), "zeta(3) + zeta(1,2) + zeta(2,1)");
        assert_eq!(stuffle(&c("(-2)"), &c("(-1)")).to_string(), "zeta(3) + zeta(-1,-2) + zeta(-2,-1)");
        assert_eq!(stuffle(&c("(2)"), &c("(-1)")).to_string(), "zeta(-3) + zeta(-1,2) + zeta(2,-1)");
    }
}
