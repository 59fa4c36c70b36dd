use crate::error::{Error, Result};
use crate::wordcalc::{shuffle_compositions, stuffle, SignedComposition};

use super::constants::ZetaPolynomial;
use super::relation::{Provenance, Relation};

/// stuffle(u, v) - shuffle(u, v) = 0, both products read as compositions.
pub fn double_shuffle(u: &SignedComposition, v: &SignedComposition) -> Result<Relation> {
    for c in [u, v] {
        if !c.convergent() {
            return Err(Error::DivergentComposition(c.to_string()));
        }
    }
    let st = stuffle(u, v);
    let sh = shuffle_compositions(u, v)?;
    Ok(Relation::new(st.sub(&sh), ZetaPolynomial::new(), Provenance::DoubleShuffle))
}

/// Sum of the double-shuffle relations for (2̄)·(1̄) and (2)·(1̄); the
/// depth-two terms other than ζ(2̄,1) cancel.
pub fn alternating_elimination() -> Result<Relation> {
    let c = |s: &str| s.parse::<SignedComposition>();
    let first = double_shuffle(&c("(-2)")?, &c("(-1)")?)?;
    let second = double_shuffle(&c("(2)")?, &c("(-1)")?)?;
    Ok(first.add(&second))
}
