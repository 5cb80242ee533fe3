//! SplitMix64: the documented deterministic generator behind every sampled
//! check. One `u64` of state, an additive Weyl increment, and a 64-bit
//! finalizer; identical output on every platform for a given seed.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 stream (Steele, Lea & Flood 2014).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_u128(&mut self) -> u128 {
        ((self.next_u64() as u128) << 64) | self.next_u64() as u128
    }

    /// Uniform draw from `[1, bound]` (bound ≥ 1) by rejection-free modulo;
    /// the tiny modulo bias is irrelevant for sampling checks.
    pub fn below_inclusive(&mut self, bound: u64) -> u64 {
        debug_assert!(bound >= 1);
        1 + self.next_u64() % bound
    }

    /// Derives an independent sub-stream seed, for per-task determinism.
    pub fn fork_seed(&mut self) -> u64 {
        self.next_u64()
    }
}
