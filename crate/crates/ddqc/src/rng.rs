//! Seed derivation for reproducible random streams.
//!
//! Every random procedure in this crate draws from a [`ChaCha8Rng`] seeded
//! through [`derive_seed`], so a single master seed expands into independent,
//! platform-stable streams: one per graph in a corpus, one per row in a
//! matrix sampler. Determinism therefore never depends on thread scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives a child seed from a parent seed and a stream index.
///
/// Uses the SplitMix64 finalizer over `parent XOR (stream * phi64)`; the
/// same `(parent, stream)` pair yields the same child on every platform.
pub fn derive_seed(parent: u64, stream: u64) -> u64 {
    let mut z = parent ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The crate-wide RNG: seedable, portable, identical output on all platforms.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derive_seed_is_deterministic_and_spreads() {
        assert_eq!(derive_seed(42, 0), derive_seed(42, 0));
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
    }

    #[test]
    fn rng_streams_are_reproducible() {
        let a: Vec<u64> = (0..8).map(|i| rng_from_seed(derive_seed(7, i)).random()).collect();
        let b: Vec<u64> = (0..8).map(|i| rng_from_seed(derive_seed(7, i)).random()).collect();
        assert_eq!(a, b);
    }
}
