//! Text syntax for elements of Q<a,b,c>.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := [rational ['*']] factor+
//! factor := atom ['^' uint]
//! atom   := 'a' | 'b' | 'c' | '(' poly ')' | transform '(' poly ')'
//! ```
//!
//! Juxtaposition is the noncommutative product, so `(a+2c)(2b-2c)^2` and
//! `4*(a+2c)(b-c)^2` both parse. Transform names are those of
//! [`TransformId`].

use rug::{Integer, Rational};

use super::poly::WordPolynomial;
use super::transform::{apply_transform_poly, TransformId};
use super::word::Letter;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_word_poly(text: &str) -> Result<WordPolynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<WordPolynomial> {
        let mut negate = self.eat(b'-');
        let mut acc = WordPolynomial::new();
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn uint(&mut self) -> Option<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn term(&mut self) -> Result<WordPolynomial> {
        let mut coeff = Rational::from(1);
        if let Some(n) = self.uint() {
            coeff = Rational::from(n);
            if self.eat(b'/') {
                let d = self.uint().ok_or_else(|| self.err("expected denominator"))?;
                if d == 0 {
                    return Err(self.err("zero denominator"));
                }
                coeff /= d;
            }
            self.eat(b'*');
        }
        let mut acc = WordPolynomial::unit().scale(&coeff);
        let mut factors = 0;
        while let Some(f) = self.factor()? {
            acc = acc.concat_mul(&f);
            factors += 1;
        }
        if factors == 0 && coeff == 1 {
            return Err(self.err("expected a word factor"));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Option<WordPolynomial>> {
        let Some(atom) = self.atom()? else { return Ok(None) };
        if self.eat(b'^') {
            let n = self.uint().ok_or_else(|| self.err("expected exponent"))?;
            let n = n.to_u32().ok_or_else(|| self.err("exponent too large"))?;
            let mut out = WordPolynomial::unit();
            for _ in 0..n {
                out = out.concat_mul(&atom);
            }
            return Ok(Some(out));
        }
        Ok(Some(atom))
    }

    fn atom(&mut self) -> Result<Option<WordPolynomial>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(Some(inner))
            }
            Some(ch @ (b'a' | b'b' | b'c')) => {
                self.pos += 1;
                Ok(Some(WordPolynomial::letter(Letter::from_char(ch as char).unwrap())))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let t: TransformId = name.parse().map_err(|_| Error::Syntax {
                    offset: start,
                    message: format!("unknown transform {name:?}"),
                })?;
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after transform name"));
                }
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                apply_transform_poly(t, &inner).map(Some)
            }
            _ => Ok(None),
        }
    }
}
