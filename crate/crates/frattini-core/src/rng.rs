//! Seeded deterministic randomness for probes and randomised strategies.
//!
//! Every randomised procedure in the crate takes an explicit seed, so that
//! identical invocations are bit-identical.

use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform-enough value in `[0, bound)`; the slight modulo bias is
    /// irrelevant for sampling probes at desk scale.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.inner.next_u64() % bound
    }

    /// A random vector of residues mod p.
    pub fn fp_vec(&mut self, p: u64, len: usize) -> Vec<u64> {
        (0..len).map(|_| self.below(p)).collect()
    }

    /// A random nonzero vector of residues mod p.
    pub fn nonzero_fp_vec(&mut self, p: u64, len: usize) -> Vec<u64> {
        loop {
            let v = self.fp_vec(p, len);
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }
}
