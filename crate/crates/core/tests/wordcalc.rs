use proptest::prelude::*;
use rug::{Integer, Rational};

use eulersum::series::eval_mzv;
use eulersum::wordcalc::{
    apply_transform, comp_to_word, dualize, shuffle, stuffle, word_to_comp, CompositionPolynomial, Letter, Part,
    SignedComposition, TransformId, Word, WordPolynomial,
};
use eulersum::{Ball, PrecisionContext};

fn signed_comp(max_depth: usize, max_exp: u32) -> impl Strategy<Value = SignedComposition> {
    prop::collection::vec((1..=max_exp, prop::bool::ANY), 1..=max_depth)
        .prop_map(|v| SignedComposition::new(v.into_iter().map(|(e, neg)| Part::new(e, if neg { -1 } else { 1 })).collect()))
}

fn convergent_comp(max_depth: usize, max_exp: u32) -> impl Strategy<Value = SignedComposition> {
    signed_comp(max_depth, max_exp).prop_filter("convergent", |c| c.convergent())
}

fn positive_comp(max_depth: usize, max_exp: u32) -> impl Strategy<Value = SignedComposition> {
    prop::collection::vec(1..=max_exp, 1..=max_depth).prop_map(|v| SignedComposition::positive(&v))
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec![Letter::A, Letter::B, Letter::C]), 0..=max_len).prop_map(Word::new)
}

fn binomial(n: u32, k: u32) -> Rational {
    Rational::from(Integer::from(Integer::binomial_u(n, k)))
}

fn delannoy(p: u32, q: u32) -> Rational {
    (0..=p.min(q)).map(|k| binomial(p, k) * binomial(q, k) * Rational::from(1u32 << k)).sum()
}

fn shuffle_poly_word(p: &WordPolynomial, w: &Word) -> WordPolynomial {
    let mut out = WordPolynomial::new();
    for (u, c) in p.terms() {
        out = out.add(&shuffle(u, w).scale(c));
    }
    out
}

fn stuffle_poly_comp(p: &CompositionPolynomial, v: &SignedComposition) -> CompositionPolynomial {
    let mut out = CompositionPolynomial::new();
    for (u, c) in p.terms() {
        out = out.add(&stuffle(u, v).scale(c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn word_roundtrip(c in convergent_comp(8, 5)) {
        let w = comp_to_word(&c).unwrap();
        prop_assert_eq!(w.len() as u32, c.weight());
        prop_assert_eq!(word_to_comp(&w).unwrap(), c);
    }

    #[test]
    fn duality_is_a_weight_preserving_involution(c in positive_comp(6, 4).prop_filter("convergent", |c| c.convergent())) {
        let d = dualize(&c).unwrap();
        prop_assert_eq!(d.weight(), c.weight());
        prop_assert!(d.convergent());
        prop_assert_eq!(dualize(&d).unwrap(), c);
    }

    #[test]
    fn shuffle_commutative_and_counted(u in word(5), v in word(5)) {
        let uv = shuffle(&u, &v);
        prop_assert_eq!(&uv, &shuffle(&v, &u));
        prop_assert_eq!(uv.coefficient_sum(), binomial((u.len() + v.len()) as u32, u.len() as u32));
        if let Some(n) = uv.homogeneous_length() {
            prop_assert_eq!(n, u.len() + v.len());
        }
    }

    #[test]
    fn shuffle_associative(u in word(3), v in word(3), w in word(3)) {
        let left = shuffle_poly_word(&shuffle(&u, &v), &w);
        let right = shuffle_poly_word(&shuffle(&v, &w), &u);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stuffle_commutative_and_counted(u in signed_comp(4, 4), v in signed_comp(4, 4)) {
        let uv = stuffle(&u, &v);
        prop_assert_eq!(&uv, &stuffle(&v, &u));
        prop_assert_eq!(uv.coefficient_sum(), delannoy(u.depth() as u32, v.depth() as u32));
        for (c, _) in uv.terms() {
            prop_assert_eq!(c.weight(), u.weight() + v.weight());
        }
    }

    #[test]
    fn stuffle_associative(u in signed_comp(3, 3), v in signed_comp(3, 3), w in signed_comp(3, 3)) {
        let left = stuffle_poly_comp(&stuffle(&u, &v), &w);
        let right = stuffle_poly_comp(&stuffle(&v, &w), &u);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn duality_on_repeated_blocks() {
    let base: SignedComposition = "(2,1)".parse().unwrap();
    let three: SignedComposition = "(3)".parse().unwrap();
    for n in 1..=4 {
        assert_eq!(dualize(&base.repeat(n)).unwrap(), three.repeat(n));
    }
}

fn admissible_ab_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for mask in 0..(1u32 << len) {
            let letters: Vec<Letter> = (0..len).map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A }).collect();
            let w = Word::new(letters);
            if w.admissible() {
                out.push(w);
            }
        }
    }
    out
}

fn word_value(w: &Word, ctx: &PrecisionContext) -> Ball {
    eval_mzv(&word_to_comp(w).unwrap(), ctx).unwrap()
}

/// Each change of variable maps [0,1] onto itself, so the iterated
/// integral of the transformed polynomial equals that of the word.
#[test]
fn transforms_preserve_values() {
    let ctx = PrecisionContext::new(24);
    let words = admissible_ab_words(5);
    assert_eq!(words.len(), 15);
    for w in &words {
        let target = word_value(w, &ctx);
        for t in TransformId::ALL {
            let p = apply_transform(t, w).unwrap();
            let mut total = Ball::zero(ctx.bits());
            for (u, c) in p.terms() {
                total = total + word_value(u, &ctx).mul_rational(c);
            }
            let r = total.sub_ball(&target);
            assert!(r.contains_zero() && r.abs_upper_f64() < 1e-20, "{t}({w}) = {p}: {r}");
        }
    }
}
