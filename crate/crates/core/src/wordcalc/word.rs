use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::composition::{Part, SignedComposition};
use crate::error::{Error, Result};

/// a = dt/t, b = dt/(1-t), c = -dt/(1+t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Convergent at both ends of [0,1]: the outermost form is not b and the
    /// innermost is not a. Words opening with c encode sums whose first part
    /// is a barred 1.
    pub fn admissible(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(first), Some(last)) => *first != Letter::B && *last != Letter::A,
            _ => false,
        }
    }

    pub fn uses_c(&self) -> bool {
        self.0.contains(&Letter::C)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Reverse and swap a <-> b (the change of variable t -> 1-t).
    pub fn dual(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::A => Letter::B,
                    Letter::B => Letter::A,
                    Letter::C => Letter::C,
                })
                .collect(),
        )
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| {
                Letter::from_char(ch).ok_or_else(|| Error::Syntax {
                    offset: i,
                    message: format!("letter {ch:?} is not one of a, b, c"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Iterated-integral word of a convergent Euler sum. Slot j is b when the
/// cumulative sign σ_1···σ_j is +1 and c otherwise.
pub fn comp_to_word(c: &SignedComposition) -> Result<Word> {
    if !c.convergent() {
        return Err(Error::DivergentComposition(c.to_string()));
    }
    let mut letters = Vec::with_capacity(c.weight() as usize);
    let mut cumulative = 1i8;
    for p in c.parts() {
        letters.extend(std::iter::repeat_n(Letter::A, p.exp as usize - 1));
        cumulative *= p.sign;
        letters.push(if cumulative == 1 { Letter::B } else { Letter::C });
    }
    Ok(Word(letters))
}

pub fn word_to_comp(w: &Word) -> Result<SignedComposition> {
    if !w.admissible() {
        return Err(Error::InadmissibleWord(w.to_string()));
    }
    let mut parts = Vec::new();
    let mut run = 0u32;
    let mut previous = 1i8;
    for &l in w.letters() {
        match l {
            Letter::A => run += 1,
            Letter::B | Letter::C => {
                let eps = if l == Letter::B { 1 } else { -1 };
                parts.push(Part::new(run + 1, previous * eps));
                previous = eps;
                run = 0;
            }
        }
    }
    Ok(SignedComposition::new(parts))
}

/// Duality ζ(w) = ζ(dual w) for unsigned compositions.
pub fn dualize(c: &SignedComposition) -> Result<SignedComposition> {
    if !c.all_positive() {
        return Err(Error::UnsupportedSigns(c.to_string()));
    }
    let w = comp_to_word(c)?;
    word_to_comp(&w.dual())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(s: &str) -> SignedComposition {
        s.parse().unwrap()
    }

    #[test]
    fn encodes_known_words() {
        assert_eq!(comp_to_word(&comp("(2,1)")).unwrap().to_string(), "abb");
        assert_eq!(comp_to_word(&comp("(-2,1)")).unwrap().to_string(), "acc");
        assert_eq!(comp_to_word(&comp("(-2,1,-2,1)")).unwrap().to_string(), "accabb");
    }

    #[test]
    fn decodes_known_words() {
        assert_eq!(word_to_comp(&"aab".parse().unwrap()).unwrap(), comp("(3)"));
        assert_eq!(word_to_comp(&"acc".parse().unwrap()).unwrap(), comp("(-2,1)"));
        assert_eq!(word_to_comp(&"cac".parse().unwrap()).unwrap(), comp("(-1,2)"));
        assert!(matches!(word_to_comp(&"bab".parse().unwrap()), Err(Error::InadmissibleWord(_))));
        assert!(matches!(word_to_comp(&"aba".parse().unwrap()), Err(Error::InadmissibleWord(_))));
    }

    #[test]
    fn duality_examples() {
        assert_eq!(dualize(&comp("(2,1)")).unwrap(), comp("(3)"));
        assert_eq!(dualize(&comp("(4,1,1)")).unwrap(), comp("(4,1,1)"));
        assert_eq!(dualize(&comp("(3,1,1)")).unwrap(), comp("(4,1)"));
        assert_eq!(dualize(&comp("(2,1,2,1)")).unwrap(), comp("(3,3)"));
        assert!(matches!(dualize(&comp("(-2,1)")), Err(Error::UnsupportedSigns(_))));
    }

    #[test]
    fn divergent_rejected() {
        assert!(matches!(comp_to_word(&comp("(1,2)")), Err(Error::DivergentComposition(_))));
    }
}
