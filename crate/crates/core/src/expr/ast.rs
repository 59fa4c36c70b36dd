use std::fmt;

use rug::{Integer, Rational};

use crate::wordcalc::SignedComposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    Log2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Literal with a terminating decimal expansion (possibly negative).
    Num(Rational),
    Const(Constant),
    Zeta(SignedComposition),
    QZeta { q: Rational, args: Vec<u32> },
    Li { s: u32, x: Rational },
    Witten(i64, i64, i64),
    Int(String),
    Apery,
    Bbp,
    Ramanujan(u32),
    StirlingZeta(u32, u64),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

const NEG_PREC: u8 = 3;
const POW_PREC: u8 = 4;
const ATOM_PREC: u8 = 5;

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(q) if *q < 0 => NEG_PREC,
            Expr::Neg(_) => NEG_PREC,
            Expr::Bin(op, _, _) => op.precedence(),
            Expr::Pow(_, _) => POW_PREC,
            _ => ATOM_PREC,
        }
    }

    fn leads_with_literal(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Pow(b, _) => b.leads_with_literal(),
            _ => false,
        }
    }

    /// Largest depth among the zeta arguments, 0 if there are none.
    pub fn max_depth(&self) -> usize {
        match self {
            Expr::Zeta(c) => c.depth(),
            Expr::QZeta { args, .. } => args.len(),
            Expr::Witten(..) => 2,
            Expr::Neg(e) | Expr::Pow(e, _) => e.max_depth(),
            Expr::Bin(_, a, b) => a.max_depth().max(b.max_depth()),
            _ => 0,
        }
    }

    /// Canonical text; `parse(render(e)) == e`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Exact decimal text of a rational with denominator 2^a 5^b, otherwise p/q.
pub fn render_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        return q.numer().to_string();
    }
    let mut den = q.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den.is_divisible_u(2) {
        den /= 2u32;
        twos += 1;
    }
    while den.is_divisible_u(5) {
        den /= 5u32;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = Rational::from(q * Integer::from(Integer::u_pow_u(10, places)));
    let digits = scaled.numer().clone().abs().to_string();
    let padded = format!("{digits:0>width$}", width = places as usize + 1);
    let (int_part, frac) = padded.split_at(padded.len() - places as usize);
    let sign = if *q < 0 { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => f.write_str(&render_rational(q)),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::Log2) => f.write_str("log2"),
            Expr::Zeta(c) => write!(f, "zeta({})", c.args()),
            Expr::QZeta { q, args } => {
                let list: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "qzeta({}; {})", render_rational(q), list.join(","))
            }
            Expr::Li { s, x } => write!(f, "li({s}, {})", render_rational(x)),
            Expr::Witten(r, s, t) => write!(f, "witten({r},{s},{t})"),
            Expr::Int(id) => write!(f, "int({id})"),
            Expr::Apery => f.write_str("apery()"),
            Expr::Bbp => f.write_str("bbp()"),
            Expr::Ramanujan(k) => write!(f, "ramanujan({k})"),
            Expr::StirlingZeta(m, n) => write!(f, "stirlingzeta({m},{n})"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                // "-3" would read back as a negative literal
                write_child(f, e, e.precedence() < POW_PREC || e.leads_with_literal())
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write_child(f, a, a.precedence() < p)?;
                f.write_str(op.symbol())?;
                // right operands bind tighter so left-associativity survives
                write_child(f, b, b.precedence() <= p)
            }
            Expr::Pow(base, n) => {
                write_child(f, base, base.precedence() < ATOM_PREC)?;
                write!(f, "^{n}")
            }
        }
    }
}
