use alloc::format;

use crate::error::{Error, Result};

/// How the support budget `K^t` shrinks from `N` towards `K` over the epochs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScheduleKind {
    /// `K^t = floor(N - (N - K) t / E)`.
    #[default]
    Linear,
}

impl ScheduleKind {
    pub fn budget(self, t: usize, n: usize, k: usize, e: usize) -> usize {
        match self {
            ScheduleKind::Linear => sparsity_schedule(t, n, k, e),
        }
    }
}

/// `floor(n - (n - k) * t / e)`, evaluated in integers.
///
/// Requires `1 <= k <= n` and `e >= 1`. The result is non-increasing in `t`
/// and equals `k` at `t == e`.
pub fn sparsity_schedule(t: usize, n: usize, k: usize, e: usize) -> usize {
    debug_assert!(k <= n && e >= 1);
    // floor(n - q) == n - ceil(q) for rational q = (n - k) t / e.
    let num = (n - k) as u128 * t as u128;
    let shrink = num.div_ceil(e as u128);
    (n as u128).saturating_sub(shrink) as usize
}

/// Parameters of the sparse stochastic solver and its reference baselines.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Target support size `K`.
    pub k: usize,
    /// Number of epochs `E`.
    pub epochs: usize,
    /// Mini-batch size `J`.
    pub batch: usize,
    /// Learning rate.
    pub lr: f64,
    /// Momentum, in `[0, 1)`.
    pub momentum: f64,
    pub seed: u64,
    /// Convergence threshold on `||s^t - s^{t-1}||` for power iteration.
    pub power_tol: f64,
    pub power_max_iters: usize,
    pub schedule: ScheduleKind,
    /// Keep a copy of the full weight vector in every trace record.
    pub trace_weights: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            k: 1,
            epochs: 20,
            batch: 16,
            lr: 0.001,
            momentum: 0.9,
            seed: 0,
            power_tol: 1e-8,
            power_max_iters: 10_000,
            schedule: ScheduleKind::Linear,
            trace_weights: false,
        }
    }
}

impl SolverConfig {
    /// Default parameters with target sparsity `k`.
    pub fn new(k: usize) -> Self {
        Self { k, ..Self::default() }
    }

    pub fn with_epochs(mut self, epochs: usize) -> Self {
        self.epochs = epochs;
        self
    }

    pub fn with_batch(mut self, batch: usize) -> Self {
        self.batch = batch;
        self
    }

    pub fn with_lr(mut self, lr: f64) -> Self {
        self.lr = lr;
        self
    }

    pub fn with_momentum(mut self, momentum: f64) -> Self {
        self.momentum = momentum;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trace_weights(mut self, on: bool) -> Self {
        self.trace_weights = on;
        self
    }

    /// Budget for epoch `t` under the configured schedule.
    pub fn budget(&self, t: usize, n: usize) -> usize {
        self.schedule.budget(t, n, self.k, self.epochs)
    }

    /// Checks every field against a problem with `n` items.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 items, got {n}")));
        }
        if self.k < 1 || self.k > n {
            return Err(Error::InvalidConfig(format!("k must be in 1..={n}, got {}", self.k)));
        }
        if self.epochs < 1 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        if self.batch < 1 {
            return Err(Error::InvalidConfig("batch must be at least 1".into()));
        }
        if !(self.lr.is_finite() && self.lr > 0.0) {
            return Err(Error::InvalidConfig(format!("lr must be positive, got {}", self.lr)));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::InvalidConfig(format!(
                "momentum must be in [0, 1), got {}",
                self.momentum
            )));
        }
        if !(self.power_tol.is_finite() && self.power_tol > 0.0) {
            return Err(Error::InvalidConfig("power_tol must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = SolverConfig::new(9);
        assert_eq!((cfg.epochs, cfg.batch), (20, 16));
        assert_eq!((cfg.lr, cfg.momentum), (0.001, 0.9));
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.power_tol, 1e-8);
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(sparsity_schedule(1, 100, 9, 20), 95);
        assert_eq!(sparsity_schedule(20, 100, 9, 20), 9);
        for t in 1..=7 {
            assert_eq!(sparsity_schedule(t, 12, 12, 7), 12);
        }
        // 100 - 91*4/20 = 81.8
        assert_eq!(sparsity_schedule(4, 100, 9, 20), 81);
        // exact multiples must not drift: 10 - 6*2/3 = 6
        assert_eq!(sparsity_schedule(2, 10, 4, 3), 6);
    }

    #[test]
    fn schedule_is_monotone_and_lands_on_k() {
        for n in 1..40 {
            for k in 1..=n {
                for e in 1..12 {
                    let mut prev = n;
                    for t in 1..=e {
                        let b = sparsity_schedule(t, n, k, e);
                        assert!(b <= prev && b >= k);
                        prev = b;
                    }
                    assert_eq!(prev, k);
                }
            }
        }
    }

    #[test]
    fn validation() {
        assert!(SolverConfig::new(3).validate(3).is_ok());
        assert!(SolverConfig::new(4).validate(3).is_err());
        assert!(SolverConfig::new(0).validate(3).is_err());
        assert!(SolverConfig::new(1).validate(1).is_err());
        assert!(SolverConfig::new(1).with_momentum(1.0).validate(3).is_err());
        assert!(SolverConfig::new(1).with_lr(0.0).validate(3).is_err());
        assert!(SolverConfig::new(1).with_epochs(0).validate(3).is_err());
        assert!(SolverConfig::new(1).with_batch(0).validate(3).is_err());
    }
}
