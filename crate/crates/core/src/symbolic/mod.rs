//! Relation families with exact rational coefficients, checked numerically
//! through the series engine.

mod bivariate;
mod constants;
mod database;
mod families;
mod genfun;
mod relation;
mod shuffle;
mod witten;

pub use bivariate::{linear_power, BiSeries};
pub use constants::{
    normalize_bars, render_monomial, zeta_poly_eval, zp_const, zp_mul, zp_pow, zp_symbol, zp_zeta, ConstSymbol, Monomial,
    ZetaPolynomial,
};
pub use database::{database, database_entry, DatabaseEntry};
pub use families::{depth_two_sum, euler_decomposition, euler_reduction, parfrac_check, parfrac_sides, sum_formula};
pub use genfun::{drinfeld_expand, kummer_expand, kummer_gamma_linear_coefficients, DrinfeldTable, KummerExpansion, MAX_ORDER};
pub use relation::{composition_poly_eval, relation_residual, Provenance, Relation};
pub use shuffle::{alternating_elimination, double_shuffle};
pub use witten::witten_reduce;
