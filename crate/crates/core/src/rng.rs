//! Counter-based splittable random streams.
//!
//! Draw `i` of a stream with key `s` is `mix(s + (i+1)·γ)` where `mix` is the
//! SplitMix64 finalizer, so any draw can be reproduced from `(seed, counter)`
//! alone. Children derive their key from the parent key and a child index.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub counter: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, counter: 0 }
    }

    pub fn at(seed: u64, counter: u64) -> Self {
        RngStream { seed, counter }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Independent child stream number `index`; does not advance `self`.
    pub fn split(&self, index: u64) -> RngStream {
        let key = mix64(self.seed ^ mix64(index.wrapping_add(0x6A09_E667_F3BC_C909)));
        RngStream { seed: mix64(key.wrapping_add(GOLDEN)), counter: 0 }
    }

    /// Uniform integer in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform double in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform ±1.
    pub fn sign(&mut self) -> i8 {
        if self.coin() {
            1
        } else {
            -1
        }
    }

    /// Bernoulli(p).
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform pair `i < j` from `0..n` (n ≥ 2).
    pub fn pair_below(&mut self, n: u64) -> (u64, u64) {
        let i = self.below(n);
        let mut j = self.below(n - 1);
        if j >= i {
            j += 1;
        }
        if i < j {
            (i, j)
        } else {
            (j, i)
        }
    }
}
