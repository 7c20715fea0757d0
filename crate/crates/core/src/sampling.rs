//! Seeded sampling with a fixed, language-independent stream.
//!
//! The generator is SplitMix64: the state starts at the seed, each step adds
//! `0x9E3779B97F4A7C15`, and the output is the state passed through
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`
//! (wrapping arithmetic).
//!
//! A bounded draw below `n` is `(u · n) >> 64` for the next output `u`. Sampling
//! `m` of `N` indices is a partial Fisher–Yates shuffle of `0..N` that swaps
//! position `i` with `i + below(N − i)` for `i = 0..m`, and returns the first `m`
//! positions in that order. Scan cell `c` uses seed `mix(seed ^ c)`, where
//! `mix(x)` is the first output of a generator seeded with `x`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::gf::PrimeField;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    /// Generator for scan cell `cell` of a run seeded with `seed`.
    pub fn for_cell(seed: u64, cell: u64) -> Self {
        Sampler::new(mix(seed ^ cell))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform-ish value in `0..n`; `n = 0` yields 0.
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform value in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// `m` distinct indices from `0..n`, in draw order.
    pub fn sample_indices(&mut self, n: usize, m: usize) -> Result<Vec<usize>> {
        if m > n {
            return Err(Error::InfeasibleCount { requested: m, max: n });
        }
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(m);
        Ok(pool)
    }

    /// A uniformly random `m`-subset of `F_q^d`.
    pub fn point_set(&mut self, field: PrimeField, dim: usize, m: usize) -> Result<PointSet> {
        let n = (field.q() as usize).pow(dim as u32);
        PointSet::from_indices(field, dim, self.sample_indices(n, m)?)
    }
}

pub fn mix(x: u64) -> u64 {
    SplitMix64::seed_from_u64(x).next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_stream() {
        // First outputs for seed 0 from the published SplitMix64 reference.
        let mut s = Sampler::new(0);
        assert_eq!(s.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(s.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(mix(0), 0xE220A8397B1DCDAF);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = Sampler::new(42).sample_indices(100, 10).unwrap();
        let b = Sampler::new(42).sample_indices(100, 10).unwrap();
        assert_eq!(a, b);
        let mut full = Sampler::new(7).sample_indices(9, 9).unwrap();
        full.sort();
        assert_eq!(full, (0..9).collect::<Vec<_>>());
        assert!(Sampler::new(0).sample_indices(3, 4).is_err());
    }

    proptest! {
        #[test]
        fn samples_are_distinct_and_in_range(seed: u64, n in 1usize..200, frac in 0.0f64..=1.0) {
            let m = (n as f64 * frac) as usize;
            let mut v = Sampler::new(seed).sample_indices(n, m).unwrap();
            prop_assert_eq!(v.len(), m);
            v.sort();
            v.dedup();
            prop_assert_eq!(v.len(), m);
            prop_assert!(v.iter().all(|&i| i < n));
        }

        #[test]
        fn below_is_bounded(seed: u64, n in 1u64..u64::MAX) {
            prop_assert!(Sampler::new(seed).below(n) < n);
        }
    }
}
