//! Matrix-free novelty ranking.
//!
//! Given `N` feature vectors, find the `K` items that are most mutually distinct:
//! the `K`-densest subgraph of the complete graph whose edges are weighted by
//! Euclidean feature distance. The discrete problem is relaxed into a
//! non-negative, unit-norm, `K`-sparse eigenvector problem over the distance
//! matrix `D`, which is then solved by stochastic gradient ascent with
//! momentum and progressive top-`K^t` clipping. `D` is never materialized;
//! every distance is recomputed from the feature rows on demand.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature runs the
//! per-item inner loop of each epoch on rayon; results are bit-identical to
//! the sequential path because each item draws from its own RNG stream.
//!
//! ```
//! use novelty_core::{ads_solve, FeatureMatrix, SolverConfig};
//!
//! let features = FeatureMatrix::from_rows(&[
//!     [0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1], [9.0, 9.0],
//! ]).unwrap();
//! let result = ads_solve(&features, &SolverConfig::new(1)).unwrap();
//! assert_eq!(result.ranking[0].0, 4);
//! ```

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

mod config;
mod error;
mod features;
pub mod metrics;
mod objective;
pub mod rng;
pub mod solver;
pub mod synth;
mod weights;

pub use config::{sparsity_schedule, ScheduleKind, SolverConfig};
pub use error::{Error, Result};
pub use features::FeatureMatrix;
pub use metrics::{objective_ratio, prf, prf_sweep, PrfReport, SweepPoint};
pub use objective::{full_gradient, novelty_score, quadratic_form};
pub use solver::{
    ads_solve, brute_force_densest, brute_force_densest_with_cap, full_gradient_ascent,
    power_iteration, sgd_epoch, EpochRecord, EpochState, NoveltyResult, PowerResult,
    DEFAULT_ENUMERATION_CAP,
};
pub use synth::{gen_gaussian_mixture, gen_planted, gen_uniform_2d, Label, LabeledDataset};
pub use weights::{clip_top_k, normalize, MomentumState, WeightVector};
