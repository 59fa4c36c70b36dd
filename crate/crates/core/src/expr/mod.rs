//! Expression language: `zeta(-2,1)`, `pi^4/72`, `int(logs21)`, …
//!
//! Negative arguments of `zeta` are barred (alternating) entries.

mod ast;
mod eval;
mod parser;

pub use ast::{render_rational, BinOp, Constant, Expr};
pub use eval::eval;
pub use parser::{parse, parse_equation, parse_rational};
