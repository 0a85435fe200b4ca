use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::objective::{apply_distance, quadratic_form};
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    /// Unit-norm principal eigenvector estimate.
    pub weights: WeightVector,
    /// Rayleigh quotient `s^T D s` at `weights`.
    pub eigenvalue: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `D` is identically zero; `weights` is the uniform vector.
    pub degenerate: bool,
}

/// Dense baseline: `s <- D s / ||D s||` from the uniform vector until
/// `||s^t - s^{t-1}|| < tol` or `max_iters` steps.
///
/// Each step costs `O(N^2 M)`, but `D` is still applied row by row.
pub fn power_iteration(features: &FeatureMatrix, tol: f64, max_iters: usize) -> Result<PowerResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidConfig(alloc::format!("tol must be positive, got {tol}")));
    }
    if max_iters < 1 {
        return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
    }
    let n = features.n_items();
    let mut s = WeightVector::uniform(n).into_vec();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let mut next = apply_distance(features, &s);
        let norm = libm::sqrt(next.iter().map(|v| v * v).sum());
        if norm == 0.0 {
            return Ok(PowerResult {
                weights: WeightVector::uniform(n),
                eigenvalue: 0.0,
                iterations,
                converged: true,
                degenerate: true,
            });
        }
        next.iter_mut().for_each(|v| *v /= norm);
        let diff = libm::sqrt(next.iter().zip(&s).map(|(a, b)| (a - b) * (a - b)).sum::<f64>());
        s = next;
        if diff < tol {
            converged = true;
            break;
        }
    }
    let eigenvalue = quadratic_form(features, &s)?;
    let weights = WeightVector::from_vec(s.iter().map(|v| v.max(0.0)).collect::<Vec<_>>())
        .expect("D s is non-negative for non-negative s");
    Ok(PowerResult { weights, eigenvalue, iterations, converged, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let f = FeatureMatrix::from_rows(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let r = power_iteration(&f, 1e-8, 100).unwrap();
        let h = 1.0 / libm::sqrt(2.0);
        for w in r.weights.as_slice() {
            assert!((w - h).abs() < 1e-12);
        }
        assert!((r.eigenvalue - 5.0).abs() < 1e-12);
        assert!(r.converged && !r.degenerate);
    }

    #[test]
    fn duplicates_are_degenerate() {
        let f = FeatureMatrix::from_rows(&[[2.0]; 4]).unwrap();
        let r = power_iteration(&f, 1e-8, 100).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.eigenvalue, 0.0);
        assert_eq!(r.weights, WeightVector::uniform(4));
    }

    #[test]
    fn bad_arguments() {
        let f = FeatureMatrix::from_rows(&[[0.0], [1.0]]).unwrap();
        assert!(power_iteration(&f, 0.0, 10).is_err());
        assert!(power_iteration(&f, 1e-8, 0).is_err());
    }
}
