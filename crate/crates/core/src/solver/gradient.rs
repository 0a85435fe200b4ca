use alloc::vec::Vec;

use super::result::{EpochRecord, NoveltyResult};
use crate::config::SolverConfig;
use crate::error::Result;
use crate::features::FeatureMatrix;
use crate::objective::{apply_distance, quadratic_form_on};
use crate::weights::WeightVector;

/// Deterministic counterpart of [`ads_solve`](super::ads_solve): each epoch
/// takes the exact step `s + 2 lr D s`, then clips to `K^t` and normalizes.
///
/// Costs `O(N^2 M)` per epoch; meant as a variance-free reference on small
/// inputs. Ignores `batch`, `momentum` and `seed`.
pub fn full_gradient_ascent(features: &FeatureMatrix, cfg: &SolverConfig) -> Result<NoveltyResult> {
    let n = features.n_items();
    cfg.validate(n)?;
    let mut weights = WeightVector::uniform(n);
    let mut trace = Vec::with_capacity(cfg.epochs);
    for t in 1..=cfg.epochs {
        let k_t = cfg.budget(t, n);
        let was_zero = weights.support_size() == 0;
        let ds = apply_distance(features, weights.as_slice());
        for (w, d) in weights.0.iter_mut().zip(&ds) {
            *w += 2.0 * cfg.lr * d;
        }
        weights.clip_top_k(k_t);
        let normalized = weights.normalize();
        let support = weights.support();
        trace.push(EpochRecord {
            epoch: t,
            k_t,
            support_size: support.len(),
            objective_estimate: quadratic_form_on(features, weights.as_slice(), &support),
            degenerate: was_zero || !normalized,
            weights: cfg.trace_weights.then(|| weights.as_slice().to_vec()),
        });
    }
    Ok(NoveltyResult::assemble(features, cfg, weights, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_give_uniform_support() {
        let f = FeatureMatrix::from_rows(&[[0.5, 0.5]; 5]).unwrap();
        let r = full_gradient_ascent(&f, &SolverConfig::new(5)).unwrap();
        let u = 1.0 / libm::sqrt(5.0);
        assert!(r.weights.as_slice().iter().all(|w| (w - u).abs() < 1e-15));
        assert_eq!(r.objective, 0.0);

        let r = full_gradient_ascent(&f, &SolverConfig::new(2)).unwrap();
        let h = 1.0 / libm::sqrt(2.0);
        assert_eq!(r.ranking.len(), 2);
        assert!(r.ranking.iter().all(|&(_, w)| (w - h).abs() < 1e-15));
    }

    #[test]
    fn seed_does_not_matter() {
        let f = FeatureMatrix::from_rows(&[[0.0], [1.0], [5.0], [2.0]]).unwrap();
        let a = full_gradient_ascent(&f, &SolverConfig::new(2).with_seed(1)).unwrap();
        let b = full_gradient_ascent(&f, &SolverConfig::new(2).with_seed(2)).unwrap();
        assert_eq!(a.weights, b.weights);
    }
}
