#![allow(dead_code)]

use qmc_core::io::random_function;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use qmc_core::TruthTable;

pub const DENSITIES: [f64; 7] = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];

pub fn table(n: u32, density: f64, seed: u64) -> TruthTable {
    random_function(n, density, seed).unwrap()
}

/// Every (n, density, seed) combination for `n` in `ns`.
pub fn cases(ns: impl IntoIterator<Item = u32>, densities: &[f64], seeds: u64) -> Vec<(u32, f64, u64, TruthTable)> {
    let mut out = Vec::new();
    for n in ns {
        for &d in densities {
            for seed in 0..seeds {
                out.push((n, d, seed, table(n, d, seed)));
            }
        }
    }
    out
}

/// A random order of the `n` dimensions.
pub fn permutation(n: u32, seed: u64) -> Vec<u32> {
    let mut v: Vec<u32> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

pub fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
