//! Seeded random monomials.
//!
//! Words are drawn with SplitMix64. Each operator is an independent uniform
//! choice among the `2 * modes` pairs `(kind, mode)`, with modes labelled
//! `"1"` to `"<modes>"`. Index `k` maps to mode `k / 2 + 1`, annihilator for
//! even `k`, creator for odd `k`. The range reduction is the multiply-high
//! map `(x * n) >> 64`, so the stream is identical on every platform.

use bolano_core::{LadderOp, LadderPoly, Scalar, Word};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct WordGen {
    rng: SplitMix64,
    ops: usize,
    modes: usize,
}

impl WordGen {
    pub fn new(seed: u64, ops: usize, modes: usize) -> Self {
        assert!(ops >= 1 && modes >= 1);
        WordGen {
            rng: SplitMix64::seed_from_u64(seed),
            ops,
            modes,
        }
    }

    fn below(&mut self, n: usize) -> usize {
        ((self.rng.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn next_op(&mut self) -> LadderOp {
        let k = self.below(2 * self.modes);
        let mode = (k / 2 + 1).to_string();
        if k.is_multiple_of(2) {
            LadderOp::annihilate(mode)
        } else {
            LadderOp::create(mode)
        }
    }

    pub fn next_word(&mut self) -> LadderPoly {
        let ops: Vec<_> = (0..self.ops).map(|_| (self.next_op(), 1)).collect();
        LadderPoly::term(Scalar::one(), Word::from_ops(ops))
    }
}

/// The `trials` words of a benchmark run.
pub fn workload(seed: u64, ops: usize, modes: usize, trials: usize) -> Vec<LadderPoly> {
    let mut g = WordGen::new(seed, ops, modes);
    (0..trials).map(|_| g.next_word()).collect()
}
