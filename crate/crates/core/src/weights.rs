use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Non-negative novelty weights, one per item.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(pub(crate) Vec<f64>);

impl WeightVector {
    /// Unit-norm uniform vector `(1/sqrt(n)) * 1`.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / libm::sqrt(n as f64); n])
    }

    /// Wraps raw weights. Returns `None` if any entry is negative or non-finite.
    pub fn from_vec(weights: Vec<f64>) -> Option<Self> {
        weights.iter().all(|w| w.is_finite() && *w >= 0.0).then_some(Self(weights))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|w| w * w).sum())
    }

    /// Indices with strictly positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0.0).collect()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&w| w > 0.0).count()
    }

    /// Keeps the `k_t` largest entries and zeroes the rest. Ties at the
    /// threshold keep the lower index.
    pub fn clip_top_k(&mut self, k_t: usize) {
        let n = self.0.len();
        if k_t >= n {
            return;
        }
        if k_t == 0 {
            self.0.iter_mut().for_each(|w| *w = 0.0);
            return;
        }
        let w = &self.0;
        let mut order: Vec<usize> = (0..n).collect();
        order.select_nth_unstable_by(k_t - 1, |&a, &b| rank_order(w[a], a, w[b], b));
        for &i in &order[k_t..] {
            self.0[i] = 0.0;
        }
    }

    /// Scales to unit L2 norm. An all-zero vector is left untouched and
    /// `false` is returned.
    pub fn normalize(&mut self) -> bool {
        let norm = self.norm();
        if norm == 0.0 {
            return false;
        }
        for w in &mut self.0 {
            *w /= norm;
        }
        true
    }

    /// `(index, weight)` for every positive entry, heaviest first, ties by
    /// ascending index.
    pub fn ranking(&self) -> Vec<(usize, f64)> {
        let mut ranked: Vec<(usize, f64)> =
            self.0.iter().copied().enumerate().filter(|&(_, w)| w > 0.0).collect();
        ranked.sort_by(|a, b| rank_order(a.1, a.0, b.1, b.0));
        ranked
    }
}

/// Descending by weight, then ascending by index.
#[inline]
fn rank_order(wa: f64, a: usize, wb: f64, b: usize) -> Ordering {
    wb.total_cmp(&wa).then(a.cmp(&b))
}

impl AsRef<[f64]> for WeightVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Free-function form of [`WeightVector::clip_top_k`].
pub fn clip_top_k(w: &WeightVector, k_t: usize) -> WeightVector {
    let mut out = w.clone();
    out.clip_top_k(k_t);
    out
}

/// Free-function form of [`WeightVector::normalize`]; the flag is `true`
/// for the degenerate all-zero input.
pub fn normalize(w: &WeightVector) -> (WeightVector, bool) {
    let mut out = w.clone();
    let ok = out.normalize();
    (out, !ok)
}

/// Per-item moving average of mini-batch distance sums.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState(pub(crate) Vec<f64>);

impl MomentumState {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}
