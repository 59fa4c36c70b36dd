use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divergent composition {0}")]
    DivergentComposition(String),
    #[error("inadmissible word {0:?}")]
    InadmissibleWord(String),
    #[error("duality is only defined for unsigned compositions, got {0}")]
    UnsupportedSigns(String),
    #[error("transform input must be a word over {{a,b}}, got {0:?}")]
    UnsupportedAlphabet(String),
    #[error("polynomials are not homogeneous of a common length")]
    NotHomogeneous,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("divergent input: {0}")]
    DivergentInput(String),
    #[error("cannot certify {digits} digits within {max_terms} terms")]
    PrecisionUnreachable { digits: u32, max_terms: u64 },
    #[error("q must lie strictly between 0 and 1, got {0}")]
    InvalidQ(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("pole at positive integer x = {0}")]
    PoleAtPositiveInteger(String),
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("non-convergent Witten triple ({0}, {1}, {2})")]
    NonConvergent(i64, i64, i64),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("quadrature tolerance {0} not met")]
    ToleranceNotMet(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{name} expects {expected} argument(s), got {got}")]
    Arity { name: String, expected: String, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
}

pub type Result<T> = std::result::Result<T, Error>;
