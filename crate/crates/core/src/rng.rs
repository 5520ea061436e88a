//! Deterministic seed derivation.
//!
//! Every stochastic component takes a `u64` seed and derives per-stream
//! seeds through a SplitMix64 mix, so nested loops (restarts, trajectories,
//! depth sweeps) stay reproducible and independent of iteration order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives an independent stream seed from a base seed and a stream index.
#[inline]
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    // SplitMix64 finalizer over the golden-ratio sequence; stream + 1 keeps
    // stream 0 from passing the base seed through unmixed.
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded generator for a derived stream.
#[inline]
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}
