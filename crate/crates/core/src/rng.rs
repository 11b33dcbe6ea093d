//! Seeded PRNG used everywhere randomness is needed.
//!
//! All shuffles, SGD epoch orders, and augmentation draws go through
//! [`SplitMix64`] so that a recorded seed reproduces a run bit-for-bit on
//! any platform and toolchain.

/// SplitMix64 generator (Steele, Lea & Flood 2014 mixing constants).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derive an independent stream from a master seed and a path of
    /// sub-identifiers (fold index, review id, copy index, ...).
    ///
    /// Each part is folded into the state through one full mixing round, so
    /// streams for different paths are decorrelated.
    pub fn stream(master: u64, path: &[u64]) -> Self {
        let mut rng = Self::new(master);
        for &part in path {
            let mixed = rng.next_u64();
            rng = Self::new(mixed ^ part.wrapping_mul(0x9E3779B97F4A7C15));
        }
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[0, n)` via 128-bit multiply-shift reduction.
    pub fn next_below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform f64 in `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i + 1);
            xs.swap(i, j);
        }
    }

    /// Sample `k` distinct indices from `[0, n)`, in draw order.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        debug_assert!(k <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        let mut picked = Vec::with_capacity(k);
        for _ in 0..k {
            let j = self.next_below(pool.len());
            picked.push(pool.swap_remove(j));
        }
        picked
    }
}
