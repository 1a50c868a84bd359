//! Seeded randomness.
//!
//! Every random choice in the crate draws from ChaCha8 seeded with a 64-bit
//! seed. Independent streams for sub-tasks (retries, per-attempt splits) are
//! derived with [`sub_rng`], which selects a ChaCha stream id rather than
//! reseeding, so the streams never overlap. Integer draws go through `u64`
//! so results agree between 32- and 64-bit targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator for `seed`.
pub fn sub_rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform integer in `0..n`; `n` must be positive.
pub fn below(rng: &mut SeededRng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

pub fn chance(rng: &mut SeededRng, p: f64) -> bool {
    rng.random::<f64>() < p
}

/// Fisher-Yates shuffle driven by [`below`].
pub fn shuffle<T>(rng: &mut SeededRng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}

/// `k` distinct elements of `0..n` in random order (partial Fisher-Yates).
pub fn sample_distinct(rng: &mut SeededRng, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let k = k.min(n);
    for i in 0..k {
        let j = i + below(rng, n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}
