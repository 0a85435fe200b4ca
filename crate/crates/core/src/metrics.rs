//! Accuracy of predicted supports against ground truth, and solver quality
//! relative to the exact optimum.
//!
//! An item counts as predicted novel when its final weight is non-zero.
//! Anomalies are the positive class.

use alloc::format;
use alloc::vec::Vec;

use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::objective::novelty_score;
use crate::solver::{ads_solve, brute_force_densest_with_cap, DEFAULT_ENUMERATION_CAP};

/// Precision, recall and F-measure for the anomaly class, with the raw
/// confusion counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrfReport {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
    /// Nothing was predicted while the truth was non-empty; precision is
    /// undefined and reported as 0.
    pub empty_prediction: bool,
}

/// Returns `(precision, recall, flag)`: empty prediction scores precision 1
/// if there was nothing to find and 0 (flagged) otherwise; empty truth
/// scores recall 1.
fn precision_recall(tp: usize, predicted: usize, actual: usize) -> (f64, f64, bool) {
    let (precision, flag) = match (predicted, actual) {
        (0, 0) => (1.0, false),
        (0, _) => (0.0, true),
        (p, _) => (tp as f64 / p as f64, false),
    };
    let recall = if actual == 0 { 1.0 } else { tp as f64 / actual as f64 };
    (precision, recall, flag)
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

impl PrfReport {
    /// Precision, recall and F averaged over the anomaly and normal classes.
    pub fn macro_averaged(&self) -> (f64, f64, f64) {
        let (np, nr, _) = precision_recall(self.tn, self.tn + self.fn_, self.tn + self.fp);
        let p = 0.5 * (self.precision + np);
        let r = 0.5 * (self.recall + nr);
        let f = 0.5 * (self.f_measure + harmonic(np, nr));
        (p, r, f)
    }
}

fn index_set(indices: &[usize], n: usize) -> Result<Vec<bool>> {
    let mut set = alloc::vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        set[i] = true;
    }
    Ok(set)
}

/// Scores `predicted` against `truth` over items `0..n`. Both are treated
/// as sets.
pub fn prf(predicted: &[usize], truth: &[usize], n: usize) -> Result<PrfReport> {
    let pred = index_set(predicted, n)?;
    let act = index_set(truth, n)?;
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (&p, &a) in pred.iter().zip(&act) {
        match (p, a) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    let (precision, recall, empty_prediction) = precision_recall(tp, tp + fp, tp + fn_);
    Ok(PrfReport {
        precision,
        recall,
        f_measure: harmonic(precision, recall),
        tp,
        fp,
        fn_,
        tn,
        empty_prediction,
    })
}

/// `novelty_score(pred) / optimum` where the optimum is the best `k`-subset.
/// Defined as 1 when the optimum is zero.
pub fn objective_ratio(features: &FeatureMatrix, pred: &[usize], k: usize) -> Result<f64> {
    objective_ratio_with_cap(features, pred, k, DEFAULT_ENUMERATION_CAP)
}

pub fn objective_ratio_with_cap(features: &FeatureMatrix, pred: &[usize], k: usize, cap: u128) -> Result<f64> {
    let (_, best) = brute_force_densest_with_cap(features, k, cap)?;
    let score = novelty_score(features, pred)?;
    if best == 0.0 {
        return Ok(1.0);
    }
    Ok(score / best)
}

/// Seed-averaged metrics for one sparsity level.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub k: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f_measure: f64,
    pub n_seeds: usize,
}

/// Runs [`ads_solve`] for every `k` in `k_values` and seeds
/// `cfg.seed, cfg.seed + 1, ..`, averaging the metrics across seeds.
pub fn prf_sweep(
    features: &FeatureMatrix,
    truth: &[usize],
    k_values: &[usize],
    cfg: &SolverConfig,
    n_seeds: usize,
) -> Result<Vec<SweepPoint>> {
    if n_seeds < 1 {
        return Err(Error::InvalidConfig("n_seeds must be at least 1".into()));
    }
    let n = features.n_items();
    index_set(truth, n)?;
    let mut points = Vec::with_capacity(k_values.len());
    for &k in k_values {
        let mut sums = [0.0f64; 6];
        for s in 0..n_seeds {
            let run_cfg = SolverConfig { k, seed: cfg.seed.wrapping_add(s as u64), ..cfg.clone() };
            let result = ads_solve(features, &run_cfg).map_err(|e| match e {
                Error::InvalidConfig(msg) => Error::InvalidConfig(format!("k = {k}: {msg}")),
                other => other,
            })?;
            let report = prf(&result.support(), truth, n)?;
            let (mp, mr, mf) = report.macro_averaged();
            for (acc, v) in sums.iter_mut().zip([report.precision, report.recall, report.f_measure, mp, mr, mf]) {
                *acc += v;
            }
        }
        let m = n_seeds as f64;
        points.push(SweepPoint {
            k,
            precision: sums[0] / m,
            recall: sums[1] / m,
            f_measure: sums[2] / m,
            macro_precision: sums[3] / m,
            macro_recall: sums[4] / m,
            macro_f_measure: sums[5] / m,
            n_seeds,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_disjoint() {
        let r = prf(&[1, 4], &[4, 1], 6).unwrap();
        assert_eq!((r.precision, r.recall, r.f_measure), (1.0, 1.0, 1.0));
        let r = prf(&[0, 1], &[2, 3], 6).unwrap();
        assert_eq!((r.precision, r.recall, r.f_measure), (0.0, 0.0, 0.0));
    }

    #[test]
    fn partial_overlap() {
        let r = prf(&[0, 1, 2, 3], &[2, 3, 4], 10).unwrap();
        assert_eq!(r.precision, 0.5);
        assert!((r.recall - 2.0 / 3.0).abs() < 1e-15);
        assert!((r.f_measure - 4.0 / 7.0).abs() < 1e-15);
        assert_eq!((r.tp, r.fp, r.fn_, r.tn), (2, 2, 1, 5));
    }

    #[test]
    fn empty_conventions() {
        let r = prf(&[], &[], 4).unwrap();
        assert_eq!((r.precision, r.recall, r.f_measure), (1.0, 1.0, 1.0));
        assert!(!r.empty_prediction);
        let r = prf(&[], &[1], 4).unwrap();
        assert_eq!((r.precision, r.recall, r.f_measure), (0.0, 0.0, 0.0));
        assert!(r.empty_prediction);
        assert!(prf(&[4], &[], 4).is_err());
    }

    #[test]
    fn macro_average_of_perfect_split() {
        let r = prf(&[0], &[0], 4).unwrap();
        assert_eq!(r.macro_averaged(), (1.0, 1.0, 1.0));
        // pred {0,1}, truth {0}: normal class P = 2/2, R = 2/3.
        let (p, r2, _) = prf(&[0, 1], &[0], 4).unwrap().macro_averaged();
        assert!((p - 0.75).abs() < 1e-15);
        assert!((r2 - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn ratio_examples() {
        let f = FeatureMatrix::from_rows(&[[0.0], [1.0], [10.0]]).unwrap();
        assert!((objective_ratio(&f, &[0, 1], 2).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(objective_ratio(&f, &[0, 2], 2).unwrap(), 1.0);
        let dup = FeatureMatrix::from_rows(&[[3.0]; 4]).unwrap();
        assert_eq!(objective_ratio(&dup, &[1, 2], 2).unwrap(), 1.0);
    }
}
