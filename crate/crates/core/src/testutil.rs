//! Deterministic randomness for property-style tests.

use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// xorshift64*; fixed seeds keep every "randomized" suite reproducible.
pub struct XorShift {
    state: u64,
}

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// uniform in [0, n)
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

pub fn random_matrix(rng: &mut XorShift, field: FieldSpec, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.int_in(-bound, bound)))
}
