//! Deterministic pseudo-randomness.
//!
//! Every coin flipped in this crate goes through these helpers, so a run is
//! reproducible from a single 64-bit seed across platforms. Per-edge decisions
//! are keyed by `(seed, u, v)` rather than by iteration index, so sampling
//! results do not depend on the order edges are visited.

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// splitmix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n` (Lemire multiply-shift; n must be nonzero).
    pub fn next_range(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

/// Child seed for a recursion branch or restart, stable under refactoring.
pub fn derive_seed(parent: u64, tag: u64) -> u64 {
    mix64(mix64(parent ^ GAMMA) ^ tag.wrapping_mul(0xd605_bbb5_8c8a_5f51))
}

/// Unit coin for a canonical edge (u < v), independent of iteration order.
pub fn edge_unit(seed: u64, u: usize, v: usize) -> f64 {
    let mut h = mix64(seed ^ GAMMA);
    h = mix64(h ^ (u as u64));
    h = mix64(h ^ (v as u64).wrapping_mul(GAMMA));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
