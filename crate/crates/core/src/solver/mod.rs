//! Solvers for the sparse densest-subgraph relaxation.
//!
//! [`ads_solve`] is the stochastic, matrix-free solver. The others are
//! reference implementations used to check it: exhaustive enumeration
//! ([`brute_force_densest`]), dense power iteration ([`power_iteration`]) and
//! exact-gradient ascent with the same clipping schedule
//! ([`full_gradient_ascent`]).

mod ads;
mod exact;
mod gradient;
mod power;
mod result;

use alloc::vec::Vec;

pub use ads::{ads_solve, batch_sum, sgd_epoch, BatchScratch, EpochState, EXACT_TRACE_LIMIT};
pub use exact::{binomial, brute_force_densest, brute_force_densest_with_cap, DEFAULT_ENUMERATION_CAP};
pub use gradient::full_gradient_ascent;
pub use power::{power_iteration, PowerResult};
pub use result::{EpochRecord, NoveltyResult};

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on.
/// Each worker gets its own scratch value from `init`.
#[cfg(feature = "parallel")]
pub(crate) fn map_items<T, S, I, F>(n: usize, init: I, f: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map_init(init, f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_items<T, S, I, F>(n: usize, init: I, f: F) -> Vec<T>
where
    I: Fn() -> S,
    F: Fn(&mut S, usize) -> T,
{
    let mut scratch = init();
    (0..n).map(|i| f(&mut scratch, i)).collect()
}
