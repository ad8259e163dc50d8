/// xorshift64* generator (Marsaglia shifts 12/25/27, Vigna multiplier).
///
/// Fixed here rather than taken from a crate so the generated corpora are
/// reproducible by other implementations bit for bit.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

/// Replacement for the all-zero state, which xorshift cannot leave.
const ZERO_SEED_STATE: u64 = 0x9E37_79B9_7F4A_7C15;

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        XorShift64Star {
            state: if seed == 0 { ZERO_SEED_STATE } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..n` by modulo reduction. Panics when `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}
