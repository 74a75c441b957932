mod common;

use common::table;
use qmc_core::{find_primes_dense, find_primes_sparse, DenseOptions};

fn agree(ns: std::ops::RangeInclusive<u32>, per_n: impl Fn(u32) -> u64) {
    for n in ns {
        for d in [0.1, 0.5, 0.9] {
            for seed in 0..per_n(n) {
                let tt = table(n, d, seed);
                let dense = find_primes_dense(&tt, &DenseOptions::default()).unwrap();
                let sparse = find_primes_sparse(&tt).unwrap();
                assert_eq!(dense, sparse, "n={n} d={d} seed={seed}");
            }
        }
    }
}

#[test]
fn dense_and_sparse_agree() {
    // full count where it is cheap, a sample above
    agree(4..=12, |_| 200);
    agree(13..=16, |n| if n <= 14 { 20 } else { 4 });
}

/// 200 tables for every n in 4..=16; several minutes in release mode.
#[test]
#[ignore]
fn dense_and_sparse_agree_full() {
    agree(4..=16, |_| 200);
}
