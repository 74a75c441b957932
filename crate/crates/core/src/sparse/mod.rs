//! Sparse engine: level-by-level Quine-McCluskey over hash sets.
//!
//! Level `w` holds every implicant with `w` wildcards. Each level is built
//! in two stages: first the new implicants are generated into a plain list
//! (each exactly once), then their parents in level `w - 1` are marked
//! redundant. Whatever stays unmarked in level `w - 1` is prime.

mod level_set;

pub use level_set::LevelSet;

use crate::error::Result;
use crate::prime_set::PrimeSet;
use crate::ternary::{check_vars, code_mask, PackedImplicant, TernaryString, HIGH_BITS, LOW_BITS};
use crate::truth_table::TruthTable;

/// Implicants with one more wildcard than the members of `prev`.
///
/// For every entry `s` of `prev` (deleted ones included) and every `0` at a
/// position `i` with no `*` before it, emits `s[i -> *]` if `s[i -> 1]` is in
/// `prev`. Each new implicant has exactly one such generating pair (the one
/// at its first wildcard), so the output has no duplicates.
pub fn generate_level(prev: &LevelSet, n: u32, out: &mut Vec<PackedImplicant>) {
    let valid_low = LOW_BITS & code_mask(n);
    for s in prev.all_items() {
        let code = s.0;
        let stars = code & HIGH_BITS;
        // chunks strictly below the first star
        let before_first_star = if stars == 0 {
            valid_low
        } else {
            valid_low & ((1u64 << (stars.trailing_zeros() - 1)) - 1)
        };
        let mut zeros = !(code | (code >> 1)) & before_first_star;
        while zeros != 0 {
            let low = zeros & zeros.wrapping_neg();
            zeros ^= low;
            if prev.contains_any(PackedImplicant(code | low)) {
                out.push(PackedImplicant(code | (low << 1)));
            }
        }
    }
}

/// Marks `u[j -> 0]` and `u[j -> 1]` deleted in `prev` for every wildcard
/// position `j` of every `u` in `items`.
pub fn mark_parents_redundant(prev: &mut LevelSet, items: &[PackedImplicant]) {
    for u in items {
        let mut stars = u.0 & HIGH_BITS;
        while stars != 0 {
            let high = stars & stars.wrapping_neg();
            stars ^= high;
            let zero = u.0 & !high;
            prev.mark_deleted(PackedImplicant(zero));
            prev.mark_deleted(PackedImplicant(zero | (high >> 1)));
        }
    }
}

/// Per-run counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseStats {
    /// `|L_w|` for every level built, starting with the support.
    pub level_sizes: Vec<usize>,
    /// Primes found on each level.
    pub primes_per_level: Vec<usize>,
}

/// All prime implicants of `tt` via the sparse engine.
pub fn find_primes_sparse(tt: &TruthTable) -> Result<PrimeSet> {
    find_primes_sparse_with_stats(tt).map(|(p, _)| p)
}

pub fn find_primes_sparse_with_stats(tt: &TruthTable) -> Result<(PrimeSet, SparseStats)> {
    let n = tt.vars();
    check_vars(n)?;
    let support: Vec<PackedImplicant> = tt
        .support()
        .map(|x| TernaryString::from_point_unchecked(x, n).pack())
        .collect();
    let mut level = LevelSet::from_items(&support)?;
    drop(support);

    let mut stats = SparseStats { level_sizes: vec![level.len()], ..Default::default() };
    let mut primes: Vec<TernaryString> = Vec::new();
    let mut fresh: Vec<PackedImplicant> = Vec::new();
    for _w in 1..=n {
        if level.is_empty() {
            break;
        }
        fresh.clear();
        generate_level(&level, n, &mut fresh);
        mark_parents_redundant(&mut level, &fresh);
        let before = primes.len();
        primes.extend(level.live_items().map(|p| TernaryString::from_code(p.0, n)));
        stats.primes_per_level.push(primes.len() - before);
        if fresh.is_empty() {
            level = LevelSet::default();
            break;
        }
        // release the previous level before the next one is allocated
        drop(std::mem::take(&mut level));
        level = LevelSet::from_items(&fresh)?;
        stats.level_sizes.push(level.len());
    }
    // the last level built (all-star at w = n) has nothing above it
    if !level.is_empty() {
        let before = primes.len();
        primes.extend(level.live_items().map(|p| TernaryString::from_code(p.0, n)));
        stats.primes_per_level.push(primes.len() - before);
    }
    Ok((PrimeSet::new(n, primes), stats))
}
