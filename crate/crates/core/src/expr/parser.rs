use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::wordcalc::SignedComposition;

use super::ast::{BinOp, Constant, Expr};

/// Parses one expression.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

/// Parses `LHS == RHS`.
pub fn parse_equation(text: &str) -> Result<(Expr, Expr)> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty equation"));
    }
    let lhs = p.expr()?;
    p.skip_ws();
    if !p.eat_str("==") {
        return Err(p.error("expected '=='"));
    }
    p.skip_ws();
    let rhs = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected input"));
    }
    Ok((lhs, rhs))
}

/// A signed rational literal: `-3`, `0.25`, `1/3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut p = Parser { src: text, pos: 0 };
    let q = p.rational_arg()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected input"));
    }
    Ok(q)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                // "==" is not an operator here
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            if matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
                // a literal directly after '-' is a negative literal
                let start = self.pos;
                let q = self.number()?;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    // -3^2 is ambiguous; require (-3)^2 or -(3^2)
                    return Err(Error::Syntax { offset: start, message: "parenthesize a negative base".into() });
                }
                return Ok(Expr::Num(-q));
            }
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.primary()?;
        self.power_tail(base)
    }

    fn power_tail(&mut self, base: Expr) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.uint()?;
            let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Syntax { offset: start, message: "integer too large".into() })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let start = self.pos;
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| Error::Syntax { offset: start, message: "integer too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    /// digits ('.' digits)?, as an exact rational.
    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let int_end = self.pos;
        let mut frac = "";
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let fs = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            frac = &self.src[fs..self.pos];
        }
        let int_part = &self.src[start..int_end];
        if int_part.is_empty() && frac.is_empty() {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        let digits = format!("{int_part}{frac}");
        let n: Integer = digits.parse().map_err(|_| Error::Syntax { offset: start, message: "bad number".into() })?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        Ok(Rational::from((n, den)))
    }

    /// Signed literal in argument position: -?number ('/' number)?.
    fn rational_arg(&mut self) -> Result<Rational> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let mut q = self.number()?;
        if self.eat(b'/') {
            let start = self.pos;
            let d = self.number()?;
            if d == 0 {
                return Err(Error::Syntax { offset: start, message: "zero denominator".into() });
            }
            q /= d;
        }
        Ok(if neg { -q } else { q })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'_' | b'0'..=b'9')) {
            if self.pos == start && matches!(self.peek(), Some(b'0'..=b'9')) {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(&self.src[start..self.pos])
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'0'..=b'9' | b'.') => Ok(Expr::Num(self.number()?)),
            Some(_) => {
                let start = self.pos;
                let Some(name) = self.ident() else {
                    return Err(self.error("unexpected character"));
                };
                match name {
                    "pi" => Ok(Expr::Const(Constant::Pi)),
                    "log2" => Ok(Expr::Const(Constant::Log2)),
                    _ => self.call(name, start),
                }
            }
        }
    }

    /// Comma-separated integers up to ')'.
    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b')') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if !self.eat(b',') {
                return Ok(out);
            }
        }
    }

    fn arity(name: &str, expected: &str, got: usize) -> Error {
        Error::Arity { name: name.to_string(), expected: expected.to_string(), got }
    }

    fn call(&mut self, name: &str, start: usize) -> Result<Expr> {
        let known = ["zeta", "qzeta", "li", "witten", "int", "apery", "bbp", "ramanujan", "stirlingzeta"];
        if !known.contains(&name) {
            return Err(Error::Syntax { offset: start, message: format!("unknown name {name:?}") });
        }
        self.expect(b'(')?;
        let e = match name {
            "zeta" => {
                let args = self.int_list()?;
                if args.is_empty() {
                    return Err(Self::arity(name, "at least 1", 0));
                }
                if args.contains(&0) {
                    return Err(Error::Domain("zeta arguments must be nonzero".into()));
                }
                Expr::Zeta(SignedComposition::from_signed(&args)?)
            }
            "qzeta" => {
                let q = self.rational_arg()?;
                self.expect(b';')?;
                let args = self.int_list()?;
                if args.is_empty() {
                    return Err(Self::arity(name, "q and at least 1 integer", 0));
                }
                if args.iter().any(|&a| a < 1 || a > i64::from(u32::MAX)) {
                    return Err(Error::Domain("qzeta arguments must be positive".into()));
                }
                Expr::QZeta { q, args: args.iter().map(|&a| a as u32).collect() }
            }
            "li" => {
                let s = self.int()?;
                if !self.eat(b',') {
                    return Err(Self::arity(name, "2", 1));
                }
                let x = self.rational_arg()?;
                if s < 1 || s > i64::from(u32::MAX) {
                    return Err(Error::Domain("li order must be positive".into()));
                }
                Expr::Li { s: s as u32, x }
            }
            "witten" => {
                let a = self.int_list()?;
                if a.len() != 3 {
                    return Err(Self::arity(name, "3", a.len()));
                }
                Expr::Witten(a[0], a[1], a[2])
            }
            "int" => {
                let Some(id) = self.ident() else {
                    return Err(self.error("expected a catalog id"));
                };
                Expr::Int(id.to_string())
            }
            "apery" | "bbp" => {
                let a = self.int_list()?;
                if !a.is_empty() {
                    return Err(Self::arity(name, "0", a.len()));
                }
                if name == "apery" {
                    Expr::Apery
                } else {
                    Expr::Bbp
                }
            }
            "ramanujan" => {
                let a = self.int_list()?;
                if a.len() != 1 {
                    return Err(Self::arity(name, "1", a.len()));
                }
                let k = u32::try_from(a[0]).map_err(|_| Error::Domain("ramanujan term count must be nonnegative".into()))?;
                Expr::Ramanujan(k)
            }
            "stirlingzeta" => {
                let a = self.int_list()?;
                if a.len() != 2 {
                    return Err(Self::arity(name, "2", a.len()));
                }
                if a[0] < 1 || a[1] < 1 {
                    return Err(Error::Domain("stirlingzeta needs positive m and N".into()));
                }
                Expr::StirlingZeta(a[0] as u32, a[1] as u64)
            }
            _ => unreachable!(),
        };
        self.expect(b')')?;
        Ok(e)
    }
}
