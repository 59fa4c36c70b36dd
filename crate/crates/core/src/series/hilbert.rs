use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::par;

const MAX_ITER: usize = 10_000;

/// Largest singular value of the N×N section H[i][j] = 1/(i+j), i, j ≥ 1.
/// H is symmetric positive definite, so this is its top eigenvalue; power
/// iteration from a positive vector converges to the Perron eigenvector.
/// The radius is the residual ‖Hv - ρv‖ (an eigenvalue lies within it of
/// the Rayleigh quotient ρ) plus a floating-point allowance.
pub fn hilbert_norm(n: usize) -> Result<Ball> {
    if n == 0 {
        return Err(Error::OutOfRange("dimension must be positive".into()));
    }
    if n == 1 {
        return Ok(Ball::from_f64(0.5, 64));
    }
    // recip[k] = 1/k for k = i + j
    let recip: Vec<f64> = (0..=2 * n).map(|k| if k == 0 { 0.0 } else { 1.0 / k as f64 }).collect();
    let rows: Vec<usize> = (1..=n).collect();
    let apply = |v: &[f64]| -> Vec<f64> {
        par::map(&rows, |&i| v.iter().enumerate().map(|(j, x)| recip[i + j + 1] * x).sum::<f64>())
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut v: Vec<f64> = vec![1.0 / (n as f64).sqrt(); n];
    let mut rho_prev = 0.0;
    for _ in 0..MAX_ITER {
        let hv = apply(&v);
        let rho: f64 = hv.iter().zip(&v).map(|(a, b)| a * b).sum();
        let nrm = norm(&hv);
        let residual = norm(&hv.iter().zip(&v).map(|(a, b)| a - rho * b).collect::<Vec<_>>());
        let stable = (rho - rho_prev).abs() < 1e-12;
        v = hv.iter().map(|x| x / nrm).collect();
        if stable && residual < 1e-6 {
            let fp = 4.0 * n as f64 * f64::EPSILON * rho;
            return Ok(Ball::from_f64(rho, 64).add_error_f64(residual + fp));
        }
        rho_prev = rho;
    }
    Err(Error::NoConvergence(MAX_ITER))
}
