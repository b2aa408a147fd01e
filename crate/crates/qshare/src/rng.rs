//! Deterministic named random streams.
//!
//! Every run owns one root seed. All randomness in the run is drawn from
//! named streams derived from that root, so the environment, the prey, each
//! agent's exploration and each agent's advising draws are mutually
//! independent and fully reproducible regardless of scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a over a byte slice. Fixed constants, stable across platforms.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// splitmix64 finalizer, used to decorrelate nearby seeds.
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives independent [`ChaCha8Rng`] streams from a root seed by name.
#[derive(Clone, Copy, Debug)]
pub struct StreamSeeder {
    root: u64,
}

impl StreamSeeder {
    pub fn new(root: u64) -> Self {
        StreamSeeder { root }
    }

    /// Deterministic stream for `name`. Equal (root, name) pairs always
    /// produce identical generators.
    pub fn stream(&self, name: &str) -> ChaCha8Rng {
        let tag = fnv1a64(name.as_bytes());
        ChaCha8Rng::seed_from_u64(splitmix64(self.root ^ splitmix64(tag)))
    }
}
