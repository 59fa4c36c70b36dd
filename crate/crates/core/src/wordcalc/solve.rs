use std::collections::BTreeSet;

use rug::Rational;

use super::poly::WordPolynomial;
use super::word::Word;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSolution {
    pub coeffs: Vec<Rational>,
    /// Dimension of the solution space; 0 means the coefficients are unique.
    pub nullity: usize,
}

/// Find r_i with target = Σ r_i basis_i in Q<a,b,c>. Free variables are set
/// to zero when the system is underdetermined.
pub fn solve_transform_coeffs(target: &WordPolynomial, basis: &[WordPolynomial]) -> Result<TransformSolution> {
    let mut lengths = BTreeSet::new();
    for p in basis.iter().chain(std::iter::once(target)) {
        if p.is_empty() {
            continue;
        }
        lengths.insert(p.homogeneous_length().ok_or(Error::NotHomogeneous)?);
    }
    if lengths.len() > 1 {
        return Err(Error::NotHomogeneous);
    }

    let monomials: Vec<Word> = basis
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|p| p.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cols = basis.len();
    let mut rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = basis.iter().map(|p| p.coeff(m)).collect();
            row.push(target.coeff(m));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = Rational::from(rows[r][c].recip_ref());
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c].clone();
                for j in c..=cols {
                    let delta = Rational::from(&f * &rows[r][j]);
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[cols] != 0) {
        return Err(Error::NoSolution);
    }
    let mut coeffs = vec![Rational::new(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        coeffs[c] = rows[i][cols].clone();
    }
    Ok(TransformSolution { coeffs, nullity: cols - pivots.len() })
}
