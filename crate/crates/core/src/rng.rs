//! Seed derivation. Every random stream is a ChaCha8 generator keyed from the
//! episode seed and a stream label, so adding a new stream never perturbs the
//! others.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// splitmix64 finalizer, used to spread structured seeds.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ fnv1a(label.as_bytes())))
}

/// Exactly `n / 2` (rounded down) of the `n` indices get `true`, in an order
/// fixed by `salt`. Used to balance hidden properties of masked variations.
pub fn balanced_bits(salt: &str, n: usize) -> Vec<bool> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = stream(0x5eed, salt);
    order.shuffle(&mut rng);
    let mut bits = alloc::vec![false; n];
    for &i in order.iter().take(n / 2) {
        bits[i] = true;
    }
    bits
}
