//! Numeric evaluation of zeta values, Euler sums and related series. Every
//! result is a [`Ball`](crate::Ball); heuristic tail estimates are flagged
//! empirical.

mod direct;
mod finite;
mod genfun;
mod hilbert;
mod mzv;
mod polylog;
mod qzeta;
mod stirling;
mod witten;
mod zeta;
mod zeta3;

pub use direct::{eval_mzv_direct, sum_accelerated};
pub use finite::{finite_z21_check, FiniteZ21};
pub use genfun::{lambda_gf_check, sumgf_residual};
pub use hilbert::hilbert_norm;
pub use mzv::eval_mzv;
pub use polylog::{bernoulli, eval_polylog, polylog_ball};
pub use qzeta::{eval_qmzv, nested_q_sum, q_general_residual, QPart};
pub use stirling::{butzer_m3_residual, eval_zeta_via_stirling, stirling_u, StirlingTable};
pub use witten::{eval_witten, witten_direct, WittenParams};
pub use zeta::{alternating_moment_sum, eval_zeta};
pub use zeta3::{zeta3_apery, zeta3_bbp, zeta3_ramanujan};

pub(crate) use mzv::mzv_bits;
pub(crate) use zeta::zeta_bits;
