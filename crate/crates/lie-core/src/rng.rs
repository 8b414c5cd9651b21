//! Deterministic seeded randomness for tests, signal families, and the CLI.
//!
//! The generator is the splitmix64 stream: state advances by the golden-ratio
//! increment 0x9E3779B97F4A7C15 and each output is the finalizer
//! `z ^= z>>30, *= 0xBF58476D1CE4E5B9; z ^= z>>27, *= 0x94D049BB133111EB;
//! z ^= z>>31` applied to the advanced state. The stream therefore admits
//! both a sequential form ([`SplitMix64::next_u64`]) and a counter form
//! ([`at`]); `at(seed, i)` equals the (i+1)-th sequential draw from `seed`.
//! Output depends only on (seed, counter), never on platform or thread
//! schedule, which is what makes byte-identical reruns possible.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based access into the splitmix64 stream.
pub fn at(seed: u64, index: u64) -> u64 {
    finalize(seed.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1))))
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        finalize(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, n) via the 128-bit multiply reduction.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn next_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.next_below((hi - lo + 1) as u64) as i64
    }

    /// Small exact rational: numerator in [-max_num, max_num], denominator in [1, max_den].
    pub fn next_rational(&mut self, max_num: i64, max_den: i64) -> crate::Rational {
        let n = self.next_i64(-max_num, max_num);
        let d = self.next_i64(1, max_den);
        crate::rational::rat(n, d)
    }
}
