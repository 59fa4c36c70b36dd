//! Exact algebra on Euler-sum arguments and iterated-integral words.

mod composition;
mod parse;
mod poly;
mod products;
mod solve;
mod transform;
mod word;

pub use composition::{Part, SignedComposition};
pub use parse::parse_word_poly;
pub use poly::{render_coeff, CompositionPolynomial, Linear, WordPolynomial};
pub use products::{multiplicity, shuffle, stuffle};
pub use solve::{solve_transform_coeffs, TransformSolution};
pub use transform::{apply_transform, apply_transform_poly, TransformId};
pub use word::{comp_to_word, dualize, word_to_comp, Letter, Word};

/// Shuffle product of two compositions, read back as compositions.
pub fn shuffle_compositions(u: &SignedComposition, v: &SignedComposition) -> crate::Result<CompositionPolynomial> {
    let p = shuffle(&comp_to_word(u)?, &comp_to_word(v)?);
    let mut out = CompositionPolynomial::new();
    for (w, c) in p.terms() {
        out.add_term(word_to_comp(w)?, c.clone());
    }
    Ok(out)
}
