//! Seeded randomness with a fixed, documented algorithm.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. Conversions are spelled out here rather than
//! taken from `rand` so results do not depend on its version:
//!
//! * unit float: `(next_u64() >> 11) * 2^-53`, uniform on `[0, 1)`;
//! * interval `[lo, hi]`: `lo + (hi - lo) * unit`;
//! * bounded integer: rejection sampling on `next_u64()` below the largest
//!   multiple of the bound;
//! * shuffle: Fisher–Yates from the last index down.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
