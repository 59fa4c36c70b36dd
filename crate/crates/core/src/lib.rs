//! Multiple zeta values and alternating Euler sums.
//!
//! * [`wordcalc`]: compositions, iterated-integral words, shuffle/stuffle,
//!   changes of variable and exact linear solving.
//! * [`series`]: certified evaluation of zeta values, Euler sums,
//!   polylogarithms, q-analogues, Witten sums and related series.
//! * [`symbolic`]: relation families with exact rational coefficients.
//! * [`quadrature`]: adaptive Gauss–Legendre integration of the integral
//!   representations.
//! * [`expr`] and [`check`]: the expression language and identity-file
//!   runner behind the `eulersum` binary.

pub mod ball;
pub mod check;
pub mod context;
pub mod error;
pub mod expr;
pub mod par;
pub mod quadrature;
pub mod series;
pub mod symbolic;
pub mod wordcalc;

pub use ball::Ball;
pub use context::{Acceleration, PrecisionContext};
pub use error::{Error, Result};
