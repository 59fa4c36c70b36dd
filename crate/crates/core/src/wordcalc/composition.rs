use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Part {
    pub exp: u32,
    pub sign: i8,
}

impl Part {
    pub fn new(exp: u32, sign: i8) -> Part {
        assert!(exp >= 1 && (sign == 1 || sign == -1), "invalid part ({exp}, {sign})");
        Part { exp, sign }
    }

    /// Signed integer rendering: negative means barred.
    pub fn signed(&self) -> i64 {
        i64::from(self.exp) * i64::from(self.sign)
    }
}

/// Argument string (s_1,...,s_m; σ_1,...,σ_m) of an Euler sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedComposition {
    parts: Vec<Part>,
}

impl SignedComposition {
    pub fn new(parts: Vec<Part>) -> SignedComposition {
        SignedComposition { parts }
    }

    /// Build from signed integers, negative meaning barred.
    pub fn from_signed(values: &[i64]) -> Result<SignedComposition> {
        let mut parts = Vec::with_capacity(values.len());
        for &v in values {
            if v == 0 || v.unsigned_abs() > u64::from(u32::MAX) {
                return Err(Error::OutOfRange(format!("exponent {v}")));
            }
            parts.push(Part::new(v.unsigned_abs() as u32, if v < 0 { -1 } else { 1 }));
        }
        Ok(SignedComposition { parts })
    }

    /// Unsigned composition from exponents.
    pub fn positive(exps: &[u32]) -> SignedComposition {
        SignedComposition { parts: exps.iter().map(|&e| Part::new(e, 1)).collect() }
    }

    /// Repeat a pattern n times, e.g. {2,1}^n.
    pub fn repeat(&self, n: usize) -> SignedComposition {
        let mut parts = Vec::with_capacity(self.parts.len() * n);
        for _ in 0..n {
            parts.extend_from_slice(&self.parts);
        }
        SignedComposition { parts }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|p| p.exp).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn convergent(&self) -> bool {
        match self.parts.first() {
            Some(p) => !(p.exp == 1 && p.sign == 1),
            None => true,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.parts.iter().all(|p| p.sign == 1)
    }

    pub fn signed(&self) -> Vec<i64> {
        self.parts.iter().map(Part::signed).collect()
    }

    pub fn tail(&self) -> SignedComposition {
        SignedComposition { parts: self.parts[1..].to_vec() }
    }

    pub fn prepend(&self, p: Part) -> SignedComposition {
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(p);
        parts.extend_from_slice(&self.parts);
        SignedComposition { parts }
    }

    pub fn concat(&self, other: &SignedComposition) -> SignedComposition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        SignedComposition { parts }
    }

    /// Comma list without parentheses, as used inside zeta(...).
    pub fn args(&self) -> String {
        self.signed().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for SignedComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| {
                let a: Vec<(u32, i8)> = self.parts.iter().map(|p| (p.exp, -p.sign)).collect();
                let b: Vec<(u32, i8)> = other.parts.iter().map(|p| (p.exp, -p.sign)).collect();
                a.cmp(&b)
            })
    }
}

impl PartialOrd for SignedComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.args())
    }
}

impl FromStr for SignedComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignedComposition> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(SignedComposition { parts: Vec::new() });
        }
        let mut values = Vec::new();
        for (i, tok) in inner.split(',').enumerate() {
            let v: i64 = tok.trim().parse().map_err(|_| Error::Syntax {
                offset: i,
                message: format!("bad composition entry {:?}", tok.trim()),
            })?;
            values.push(v);
        }
        SignedComposition::from_signed(&values)
    }
}
