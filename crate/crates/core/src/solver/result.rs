use alloc::vec::Vec;

use crate::config::SolverConfig;
use crate::features::FeatureMatrix;
use crate::objective::quadratic_form_on;
use crate::weights::WeightVector;

/// Diagnostics for one epoch.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Support budget `K^t` applied by the clipping step.
    pub k_t: usize,
    pub support_size: usize,
    /// `s^T D s` after the epoch; exact for supports up to
    /// [`EXACT_TRACE_LIMIT`](super::EXACT_TRACE_LIMIT), sampled beyond.
    pub objective_estimate: f64,
    /// The epoch started from an all-zero vector and did nothing.
    pub degenerate: bool,
    /// Full weight vector after the epoch, if requested in the config.
    pub weights: Option<Vec<f64>>,
}

/// Output of a sparse solve.
#[derive(Debug, Clone, PartialEq)]
pub struct NoveltyResult {
    pub config: SolverConfig,
    pub weights: WeightVector,
    /// Support of `weights` as `(index, weight)`, heaviest first.
    pub ranking: Vec<(usize, f64)>,
    /// Exact `s^T D s` at the final weights.
    pub objective: f64,
    pub trace: Vec<EpochRecord>,
    pub degenerate: bool,
    pub epochs_run: usize,
}

impl NoveltyResult {
    pub(crate) fn assemble(
        features: &FeatureMatrix,
        config: &SolverConfig,
        weights: WeightVector,
        trace: Vec<EpochRecord>,
    ) -> Self {
        let support = weights.support();
        let objective = quadratic_form_on(features, weights.as_slice(), &support);
        Self {
            config: config.clone(),
            ranking: weights.ranking(),
            objective,
            degenerate: trace.iter().any(|r| r.degenerate),
            epochs_run: trace.len(),
            trace,
            weights,
        }
    }

    /// Selected item indices, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.weights.support()
    }
}
