use num_bigint::BigInt;

use super::{CycNum, Rational};

/// Deterministic linear-congruential generator; every pseudo-random choice in the
/// workbench is drawn from one of these, keyed by a user seed.
#[derive(Clone, Debug)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        let mut r = SeededRng { state: seed ^ 0x9E37_79B9_7F4A_7C15 };
        r.next_u64();
        r
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        // the high half has the longest period
        let x = self.state;
        (x >> 32) ^ (x << 32 >> 48)
    }

    /// Uniform integer in the closed range `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn nonzero_int_in(&mut self, lo: i64, hi: i64) -> i64 {
        loop {
            let v = self.int_in(lo, hi);
            if v != 0 {
                return v;
            }
        }
    }

    /// A small rational `p/q` with `|p| <= bound` and `1 <= q <= bound`.
    pub fn rational(&mut self, bound: i64) -> Rational {
        let p = self.int_in(-bound, bound);
        let q = self.int_in(1, bound);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn nonzero_rational(&mut self, bound: i64) -> Rational {
        let p = self.nonzero_int_in(-bound, bound);
        let q = self.int_in(1, bound);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// A rational vector with small integer entries, not all zero.
    pub fn int_vector(&mut self, len: usize, bound: i64) -> Vec<CycNum> {
        loop {
            let v: Vec<i64> = (0..len).map(|_| self.int_in(-bound, bound)).collect();
            if v.iter().any(|&a| a != 0) {
                return v.into_iter().map(CycNum::from_int).collect();
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for k in (1..items.len()).rev() {
            let j = (self.next_u64() % (k as u64 + 1)) as usize;
            items.swap(k, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let mut a = SeededRng::new(7);
        let mut b = SeededRng::new(7);
        for _ in 0..100 {
            let x = a.int_in(-3, 5);
            assert_eq!(x, b.int_in(-3, 5));
            assert!((-3..=5).contains(&x));
        }
        let mut c = SeededRng::new(8);
        let xs: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..4).map(|_| c.next_u64()).collect();
        assert_ne!(xs, ys);
    }
}
