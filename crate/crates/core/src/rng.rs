//! Seeded, platform-independent pseudo-random numbers.
//!
//! Every randomized routine in the crate draws from [`XorShift64Star`] so that
//! a seed reproduces the same tournaments and samples on every platform.
//!
//! Constants:
//!
//! - seeding: one SplitMix64 step, increment `0x9E37_79B9_7F4A_7C15`,
//!   finalizer multipliers `0xBF58_476D_1CE4_E5B9` and `0x94D0_49BB_1331_11EB`
//!   with shifts 30, 27, 31;
//! - state update: xorshift with shifts 12, 25, 27 (right, left, right);
//! - output: state times `0x2545_F491_4F6C_DD1D`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const OUTPUT_MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;

/// SplitMix64 finalizer applied to `x + GOLDEN_GAMMA`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the `index`-th independent stream derived from `seed`.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(GOLDEN_GAMMA))
}

#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = splitmix64(seed);
        // all-zero state is a fixed point of the xorshift step
        Self {
            state: if state == 0 { GOLDEN_GAMMA } else { state },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(OUTPUT_MULTIPLIER)
    }

    /// Fair coin from the top output bit.
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform integer in `0..bound` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
