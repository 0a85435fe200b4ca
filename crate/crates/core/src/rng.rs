//! Seeded random streams.
//!
//! Every random draw in this crate comes from SplitMix64 (Steele, Lea and
//! Flood, 2014), chosen because it is a few lines in any language and so
//! streams can be reproduced outside Rust:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! Derived quantities:
//!
//! * `next_f64`: `(next_u64 >> 11) * 2^-53`, uniform on `[0, 1)`.
//! * `below(n)`: Lemire's multiply-shift with rejection, uniform on `0..n`.
//! * `normal`: Box-Muller, `sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`, one value per pair.
//! * `for_stream(seed, words)`: starting from `h = mix(seed)`, fold each word
//!   as `h = mix(h ^ mix(word + 0x9E3779B97F4A7C15))`, then seed a generator
//!   with `h`. `mix` is the output function above without the increment.

use alloc::vec::Vec;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent generator keyed by `seed` and a tuple of words
    /// (for instance epoch and item index).
    pub fn for_stream(seed: u64, words: &[u64]) -> Self {
        let mut h = mix(seed);
        for &w in words {
            h = mix(h ^ mix(w.wrapping_add(GOLDEN)));
        }
        Self::new(h)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let mut m = (self.next_u64() as u128) * (n as u128);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = (self.next_u64() as u128) * (n as u128);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        libm::sqrt(-2.0 * libm::log(1.0 - u1)) * libm::cos(core::f64::consts::TAU * u2)
    }

    /// Fills `out` with `k` distinct values drawn uniformly from `0..n`
    /// (Floyd's algorithm). `seen` is scratch space kept sorted for membership
    /// tests. Requires `k <= n`.
    pub fn sample_distinct(&mut self, n: usize, k: usize, out: &mut Vec<usize>, seen: &mut Vec<usize>) {
        debug_assert!(k <= n);
        out.clear();
        seen.clear();
        if k == n {
            out.extend(0..n);
            return;
        }
        for upper in n - k..n {
            let pick = self.below(upper as u64 + 1) as usize;
            let value = match seen.binary_search(&pick) {
                Ok(_) => upper,
                Err(_) => pick,
            };
            // `upper` is larger than anything drawn so far, so it always sorts last.
            match seen.binary_search(&value) {
                Ok(_) => unreachable!("Floyd sampling produced a duplicate"),
                Err(pos) => seen.insert(pos, value),
            }
            out.push(value);
        }
    }
}
