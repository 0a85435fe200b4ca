//! Scaling harness: time the stochastic solver and measure its peak heap use
//! for a range of problem sizes on uniform random features.

use std::time::Instant;

use novelty_core::rng::SplitMix64;
use novelty_core::{ads_solve, FeatureMatrix, SolverConfig};
use serde::Serialize;

use crate::alloc_track;
use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub m: usize,
    pub k: usize,
    pub batch: usize,
    pub epochs: usize,
    pub seed: u64,
    pub repeats: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub batch: usize,
    pub epochs: usize,
    /// Fastest of the repeats, divided by the number of epochs.
    pub per_epoch_seconds: f64,
    /// Peak heap growth over the baseline while building the features and
    /// solving. Zero unless the tracking allocator is installed.
    pub peak_bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Growth from the first to the last row, divided by the growth in `n`.
    /// 1 means exactly linear.
    pub time_growth_vs_linear: Option<f64>,
    pub memory_growth_vs_linear: Option<f64>,
}

pub fn random_features(n: usize, m: usize, seed: u64) -> Result<FeatureMatrix> {
    let mut rng = SplitMix64::new(seed);
    let data = (0..n * m).map(|_| rng.next_f64()).collect();
    Ok(FeatureMatrix::new(n, m, data)?)
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.ns.is_empty() {
        return Err(CliError::Usage("bench needs at least one N".into()));
    }
    if cfg.repeats < 1 {
        return Err(CliError::Usage("repeats must be at least 1".into()));
    }
    // Warm up lazily initialized state (thread pool) outside the measurements.
    ads_solve(&random_features(32, cfg.m.max(1), cfg.seed)?, &SolverConfig::new(1).with_epochs(1))?;

    let mut rows = Vec::with_capacity(cfg.ns.len());
    for &n in &cfg.ns {
        let solver = SolverConfig::new(cfg.k)
            .with_batch(cfg.batch)
            .with_epochs(cfg.epochs)
            .with_seed(cfg.seed);
        solver.validate(n)?;

        let baseline = alloc_track::current();
        alloc_track::reset_peak();
        let features = random_features(n, cfg.m, cfg.seed)?;
        let mut best = f64::INFINITY;
        for _ in 0..cfg.repeats {
            let start = Instant::now();
            let result = ads_solve(&features, &solver)?;
            best = best.min(start.elapsed().as_secs_f64());
            drop(result);
        }
        let peak_bytes = alloc_track::peak().saturating_sub(baseline);
        drop(features);

        rows.push(BenchRow {
            n,
            m: cfg.m,
            k: cfg.k,
            batch: cfg.batch,
            epochs: cfg.epochs,
            per_epoch_seconds: best / cfg.epochs as f64,
            peak_bytes,
        });
    }

    let growth = |f: fn(&BenchRow) -> f64| {
        let (first, last) = (rows.first()?, rows.last()?);
        if rows.len() < 2 || f(first) <= 0.0 || first.n == last.n {
            return None;
        }
        Some((f(last) / f(first)) / (last.n as f64 / first.n as f64))
    };
    let time_growth_vs_linear = growth(|r| r.per_epoch_seconds);
    let memory_growth_vs_linear = growth(|r| r.peak_bytes as f64);
    Ok(BenchReport { rows, time_growth_vs_linear, memory_growth_vs_linear })
}
