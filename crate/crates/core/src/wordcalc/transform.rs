use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::poly::{Linear, WordPolynomial};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Changes of variable that map [0,1] onto itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformId {
    Identity,
    /// t -> 1-t
    Tau,
    /// t -> t^2
    Sumsigns,
    /// t -> 2t/(1+t)
    Landen,
    /// t -> 4t/(1+t)^2
    Quadlanden,
}

impl TransformId {
    pub const ALL: [TransformId; 5] =
        [TransformId::Identity, TransformId::Tau, TransformId::Sumsigns, TransformId::Landen, TransformId::Quadlanden];

    pub fn name(self) -> &'static str {
        match self {
            TransformId::Identity => "identity",
            TransformId::Tau => "tau",
            TransformId::Sumsigns => "sumsigns",
            TransformId::Landen => "landen",
            TransformId::Quadlanden => "quadlanden",
        }
    }

    /// Images of a and b as linear forms in a, b, c.
    fn images(self) -> ([(Letter, i64); 2], [(Letter, i64); 2]) {
        use Letter::*;
        match self {
            TransformId::Identity => ([(A, 1), (C, 0)], [(B, 1), (C, 0)]),
            TransformId::Tau => ([(B, 1), (C, 0)], [(A, 1), (C, 0)]),
            TransformId::Sumsigns => ([(A, 2), (C, 0)], [(B, 1), (C, 1)]),
            TransformId::Landen => ([(A, 1), (C, 1)], [(B, 1), (C, -1)]),
            TransformId::Quadlanden => ([(A, 1), (C, 2)], [(B, 2), (C, -2)]),
        }
    }
}

impl fmt::Display for TransformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TransformId> {
        TransformId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown transform {s:?}")))
    }
}

fn linear_form(form: &[(Letter, i64); 2]) -> WordPolynomial {
    let mut p = WordPolynomial::new();
    for &(l, k) in form {
        p.add_term(Word::new(vec![l]), Rational::from(k));
    }
    p
}

pub fn apply_transform(t: TransformId, w: &Word) -> Result<WordPolynomial> {
    if w.uses_c() {
        return Err(Error::UnsupportedAlphabet(w.to_string()));
    }
    if t == TransformId::Tau {
        return Ok(Linear::monomial(w.dual()));
    }
    let (ia, ib) = t.images();
    let (pa, pb) = (linear_form(&ia), linear_form(&ib));
    let mut out = WordPolynomial::unit();
    for &l in w.letters() {
        out = out.concat_mul(if l == Letter::A { &pa } else { &pb });
    }
    Ok(out)
}

/// Apply a transform termwise to a polynomial over {a,b}.
pub fn apply_transform_poly(t: TransformId, p: &WordPolynomial) -> Result<WordPolynomial> {
    let mut out = WordPolynomial::new();
    for (w, c) in p.terms() {
        out = out.add(&apply_transform(t, w)?.scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(apply_transform(TransformId::Sumsigns, &w("ab")).unwrap().to_string(), "2*ab + 2*ac");
        assert_eq!(apply_transform(TransformId::Tau, &w("abb")).unwrap().to_string(), "aab");
        assert_eq!(apply_transform(TransformId::Identity, &w("abb")).unwrap().to_string(), "abb");
    }

    #[test]
    fn quadlanden_expansion_of_abb() {
        let p = apply_transform(TransformId::Quadlanden, &w("abb")).unwrap();
        // (a+2c)(2b-2c)(2b-2c): two choices per letter, all words distinct
        assert_eq!(p.len(), 8);
        assert_eq!(p.coefficient_sum(), 0);
        assert_eq!(p.coeff(&w("abb")), 4);
        assert_eq!(p.coeff(&w("ccc")), 8);
        assert_eq!(p.coeff(&w("abc")), -4);
    }

    #[test]
    fn rejects_c() {
        assert!(matches!(apply_transform(TransformId::Landen, &w("ac")), Err(Error::UnsupportedAlphabet(_))));
    }
}
