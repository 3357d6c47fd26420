//! Deterministic RNG stream derivation.
//!
//! Every randomized operation in this crate draws from a ChaCha stream whose
//! seed is derived from the user seed plus a stable tag. Class streams are
//! keyed by class *name* rather than class index, so permuting class order
//! permutes results instead of resampling them.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a over a byte string. Pinned here so stream derivation never changes
/// with the standard library's hasher.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// splitmix64 finalizer; decorrelates nearby seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a base seed and a purpose tag.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    mix(seed ^ fnv1a(tag.as_bytes()))
}

/// RNG substream for one class, keyed by the class name.
pub fn class_stream(seed: u64, class_name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ fnv1a(class_name.as_bytes())))
}

/// RNG stream for a non-class-specific draw (e.g. permutation tests).
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed))
}
