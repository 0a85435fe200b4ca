use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::objective::novelty_score;

/// Largest number of `k`-subsets [`brute_force_densest`] will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) is divisible by i at every step.
        match acc.checked_mul(n as u128 - k as u128 + i) {
            Some(v) => acc = v / i,
            None => return u128::MAX,
        }
    }
    acc
}

/// Exact densest-`k` subset by exhaustive enumeration, with the default cap.
///
/// Returns the subset (ascending) and its total novelty score. Ties go to
/// the lexicographically smallest subset.
pub fn brute_force_densest(features: &FeatureMatrix, k: usize) -> Result<(Vec<usize>, f64)> {
    brute_force_densest_with_cap(features, k, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_densest_with_cap(
    features: &FeatureMatrix,
    k: usize,
    cap: u128,
) -> Result<(Vec<usize>, f64)> {
    let n = features.n_items();
    if k < 1 || k > n {
        return Err(Error::InvalidConfig(alloc::format!("k must be in 1..={n}, got {k}")));
    }
    let subsets = binomial(n, k);
    if subsets > cap {
        return Err(Error::EnumerationCap { subsets, cap });
    }

    let mut search = Search {
        features,
        k,
        chosen: Vec::with_capacity(k),
        best: Vec::new(),
        best_score: f64::NEG_INFINITY,
    };
    search.descend(0, 0.0);
    let objective = novelty_score(features, &search.best)?;
    Ok((search.best, objective))
}

struct Search<'a> {
    features: &'a FeatureMatrix,
    k: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    /// Sum over unordered pairs of the best subset so far.
    best_score: f64,
}

impl Search<'_> {
    // Lexicographic depth-first order; a later subset must beat the incumbent
    // by more than rounding noise to replace it.
    fn descend(&mut self, start: usize, partial: f64) {
        if self.chosen.len() == self.k {
            if self.best.is_empty() || partial > self.best_score + 1e-12 * self.best_score.abs() {
                self.best_score = partial;
                self.best.clone_from(&self.chosen);
            }
            return;
        }
        let remaining = self.k - self.chosen.len();
        let n = self.features.n_items();
        for c in start..=n - remaining {
            let added: f64 = self.chosen.iter().map(|&j| self.features.distance(c, j)).sum();
            self.chosen.push(c);
            self.descend(c + 1, partial + added);
            self.chosen.pop();
        }
    }
}
