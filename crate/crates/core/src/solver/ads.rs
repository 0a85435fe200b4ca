use alloc::format;
use alloc::vec::Vec;

use super::map_items;
use super::result::{EpochRecord, NoveltyResult};
use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::objective::quadratic_form_on;
use crate::rng::SplitMix64;
use crate::weights::{MomentumState, WeightVector};

/// Supports up to this size get an exact objective in the epoch trace.
/// Larger ones are estimated by mini-batch sampling so tracing costs no more
/// than the epoch itself.
pub const EXACT_TRACE_LIMIT: usize = 1024;

const STREAM_UPDATE: u64 = 0;
const STREAM_TRACE: u64 = 1;

/// Loop state carried between epochs.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochState {
    /// Epoch about to run, starting at 1.
    pub t: usize,
    /// `s^{t-1}`: normalized, non-negative.
    pub weights: WeightVector,
    /// `Delta^{t-1}`.
    pub momentum: MomentumState,
    pub rng_seed: u64,
}

impl EpochState {
    /// Uniform unit weights, zero momentum, `t = 1`.
    pub fn initial(n: usize, rng_seed: u64) -> Self {
        Self {
            t: 1,
            weights: WeightVector::uniform(n),
            momentum: MomentumState::zeros(n),
            rng_seed,
        }
    }
}

/// Reusable buffers for [`batch_sum`].
#[derive(Debug, Default)]
pub struct BatchScratch {
    picks: Vec<usize>,
    seen: Vec<usize>,
}

impl BatchScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Draws `min(batch, P)` members of `support` uniformly without replacement
/// and returns `sum_j d(item, j) * weights[j]` over them, with the realized
/// batch size. The item itself may be drawn; it contributes zero.
pub fn batch_sum(
    features: &FeatureMatrix,
    weights: &[f64],
    support: &[usize],
    item: usize,
    batch: usize,
    rng: &mut SplitMix64,
    scratch: &mut BatchScratch,
) -> (f64, usize) {
    let size = batch.min(support.len());
    rng.sample_distinct(support.len(), size, &mut scratch.picks, &mut scratch.seen);
    let mut sum = 0.0;
    for &p in &scratch.picks {
        let j = support[p];
        sum += features.distance(item, j) * weights[j];
    }
    (sum, size)
}

/// Runs one epoch: a momentum-smoothed stochastic gradient step on every
/// item from the frozen entering weights, then top-`K^t` clipping and
/// renormalization.
///
/// Item `i` in epoch `t` samples from its own stream keyed by
/// `(rng_seed, t, i)`, so the result does not depend on evaluation order.
pub fn sgd_epoch(
    state: EpochState,
    features: &FeatureMatrix,
    cfg: &SolverConfig,
) -> Result<(EpochState, EpochRecord)> {
    let n = features.n_items();
    cfg.validate(n)?;
    if state.weights.len() != n || state.momentum.0.len() != n {
        return Err(Error::Shape(format!("epoch state does not have {n} items")));
    }
    if state.t < 1 || state.t > cfg.epochs {
        return Err(Error::InvalidConfig(format!(
            "epoch {} outside 1..={}",
            state.t, cfg.epochs
        )));
    }

    let t = state.t;
    let k_t = cfg.budget(t, n);
    let support = state.weights.support();
    if support.is_empty() {
        let record = EpochRecord {
            epoch: t,
            k_t,
            support_size: 0,
            objective_estimate: 0.0,
            degenerate: true,
            weights: cfg.trace_weights.then(|| state.weights.as_slice().to_vec()),
        };
        return Ok((EpochState { t: t + 1, ..state }, record));
    }

    let s = state.weights.as_slice();
    let prev = state.momentum.as_slice();
    let beta = cfg.momentum;
    let step = 2.0 * cfg.lr * n as f64;
    let seed = state.rng_seed;

    let updates: Vec<(f64, f64)> = map_items(n, BatchScratch::new, |scratch, i| {
        let mut rng = SplitMix64::for_stream(seed, &[t as u64, i as u64, STREAM_UPDATE]);
        let (raw, size) = batch_sum(features, s, &support, i, cfg.batch, &mut rng, scratch);
        let delta = if t >= 2 { (1.0 - beta) * raw + beta * prev[i] } else { raw };
        (s[i] + step / size as f64 * delta, delta)
    });
    let (next, deltas): (Vec<f64>, Vec<f64>) = updates.into_iter().unzip();

    // Every term added above is non-negative.
    let mut weights = WeightVector(next);
    weights.clip_top_k(k_t);
    let normalized = weights.normalize();

    let new_support = weights.support();
    let objective_estimate = estimate_objective(features, weights.as_slice(), &new_support, cfg, seed, t);
    let record = EpochRecord {
        epoch: t,
        k_t,
        support_size: new_support.len(),
        objective_estimate,
        degenerate: !normalized,
        weights: cfg.trace_weights.then(|| weights.as_slice().to_vec()),
    };
    let next_state = EpochState {
        t: t + 1,
        weights,
        momentum: MomentumState(deltas),
        rng_seed: seed,
    };
    Ok((next_state, record))
}

fn estimate_objective(
    features: &FeatureMatrix,
    w: &[f64],
    support: &[usize],
    cfg: &SolverConfig,
    seed: u64,
    t: usize,
) -> f64 {
    if support.len() <= EXACT_TRACE_LIMIT {
        return quadratic_form_on(features, w, support);
    }
    let p = support.len() as f64;
    let terms = map_items(support.len(), BatchScratch::new, |scratch, a| {
        let i = support[a];
        let mut rng = SplitMix64::for_stream(seed, &[t as u64, i as u64, STREAM_TRACE]);
        let (raw, size) = batch_sum(features, w, support, i, cfg.batch, &mut rng, scratch);
        w[i] * p / size as f64 * raw
    });
    terms.iter().sum()
}

/// Sparse stochastic solve: `E` epochs of [`sgd_epoch`] from uniform weights.
///
/// Deterministic in `(features, cfg)`.
pub fn ads_solve(features: &FeatureMatrix, cfg: &SolverConfig) -> Result<NoveltyResult> {
    cfg.validate(features.n_items())?;
    let mut state = EpochState::initial(features.n_items(), cfg.seed);
    let mut trace = Vec::with_capacity(cfg.epochs);
    for _ in 0..cfg.epochs {
        let (next, record) = sgd_epoch(state, features, cfg)?;
        state = next;
        trace.push(record);
    }
    Ok(NoveltyResult::assemble(features, cfg, state.weights, trace))
}
