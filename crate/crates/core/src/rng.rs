//! Reproducible random streams.
//!
//! Every random stream in the crate is addressed by a master seed plus a
//! path of integer labels (for example `[SCENARIO, id]`). The path is folded
//! into a 256-bit ChaCha8 key with SplitMix64, so stream `k` never depends on
//! how many other streams were created before it or on which thread runs it.
//!
//! The scheme is versioned by [`SeedScheme::NAME`]; any change to the mixing
//! below must bump the name because it changes every published result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator type used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// Stream-path labels.
pub mod label {
    pub const SCENARIO: u64 = 0x5343_454e;
    pub const OPTIMIZE: u64 = 0x4f50_5449;
    pub const RESTART: u64 = 0x5253_5452;
    pub const VALIDATE: u64 = 0x5641_4c49;
    pub const SWEEP: u64 = 0x5357_4550;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedScheme {
    master: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SeedScheme {
    pub const NAME: &'static str = "splitmix64-chacha8/v1";

    pub fn new(master: u64) -> Self {
        Self { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// A 64-bit child seed for `path`.
    pub fn derive(&self, path: &[u64]) -> u64 {
        let mut state = self.master;
        let mut acc = splitmix64(&mut state);
        for &p in path {
            let mut s = acc ^ p.wrapping_mul(GOLDEN);
            acc = splitmix64(&mut s);
        }
        acc
    }

    /// A child scheme rooted at `path`.
    pub fn child(&self, path: &[u64]) -> SeedScheme {
        SeedScheme::new(self.derive(path))
    }

    /// The generator for `path`.
    pub fn stream(&self, path: &[u64]) -> StreamRng {
        let mut state = self.derive(path);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible() {
        let s = SeedScheme::new(42);
        let a: Vec<u64> = s.stream(&[1, 2]).random_iter().take(8).collect();
        let b: Vec<u64> = s.stream(&[1, 2]).random_iter().take(8).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_paths_give_distinct_streams() {
        let s = SeedScheme::new(42);
        assert_ne!(s.derive(&[1, 2]), s.derive(&[2, 1]));
        assert_ne!(s.derive(&[1]), s.derive(&[1, 0]));
        assert_ne!(SeedScheme::new(1).derive(&[5]), SeedScheme::new(2).derive(&[5]));
    }

    #[test]
    fn derivation_is_frozen() {
        // Pinned so an accidental change to the mixing is caught.
        let s = SeedScheme::new(0);
        assert_eq!(s.derive(&[]), 0xE220_A839_7B1D_CDAF);
    }
}
