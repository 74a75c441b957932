//! Dense engine: all of `{0,1,*}^n` as one bit-sliced indicator, transformed
//! in place by MergeAll and ReduceAll passes.
//!
//! The state is two-layered. The low `h` variables index bits inside a block
//! and are processed with shift-and-mask steps on single blocks; the high
//! `n - h` variables index blocks and are processed as whole-block Boolean
//! operations on block triples. Both layers apply the same per-triple maps
//! ([`merge_triple`], [`reduce_triple`]) along one dimension at a time.

mod block;
mod state;

pub use block::{Block, U256};
pub use state::{max_h, merge_triple, reduce_triple, DenseState, MaskTable, Op, PassStats};

use crate::error::{Error, Result};
use crate::prime_set::PrimeSet;
use crate::sys;
use crate::truth_table::TruthTable;

/// Largest supported bottom-layer dimension count (`3^5 = 243` bits in a
/// 256-bit block).
pub const MAX_H: u32 = 5;

/// Allocation limit for the dense state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MemCap {
    /// 75% of the memory currently available to the process, if known.
    #[default]
    Auto,
    Bytes(u64),
    Unlimited,
}

impl MemCap {
    pub fn resolve(self) -> Option<u64> {
        match self {
            MemCap::Auto => sys::available_memory().map(|b| b / 4 * 3),
            MemCap::Bytes(b) => Some(b),
            MemCap::Unlimited => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseOptions {
    /// Bottom-layer dimensions; `None` picks [`default_h`].
    pub h: Option<u32>,
    /// Compile-time specialized bottom layer.
    pub unroll: bool,
    /// Run the MergeAll and ReduceAll bottom layers in one sweep.
    pub fuse: bool,
    pub mem_cap: MemCap,
}

impl Default for DenseOptions {
    fn default() -> Self {
        DenseOptions {
            h: None,
            unroll: true,
            fuse: true,
            mem_cap: MemCap::Auto,
        }
    }
}

impl DenseOptions {
    /// Plain reference path: no unrolling, no fusion.
    pub fn reference() -> Self {
        DenseOptions {
            unroll: false,
            fuse: false,
            ..Default::default()
        }
    }

    pub fn with_h(self, h: u32) -> Self {
        DenseOptions { h: Some(h), ..self }
    }
}

/// Bottom-layer dimension used when none is configured.
///
/// `h = 3` with 32-bit blocks: 27 of 32 bits used, and on the machines
/// measured faster than the 256-bit block at `h = 5`, whose cross-lane
/// shifts cost more than the wider block saves.
pub const DEFAULT_H: u32 = 3;

/// [`DEFAULT_H`], or `n` when there are fewer variables.
pub fn default_h(n: u32) -> u32 {
    n.clamp(1, DEFAULT_H)
}

/// Bytes the dense state needs for `n` variables and bottom dimension `h`,
/// with the block width that `h` selects.
pub fn required_bytes(n: u32, h: u32) -> u64 {
    match h {
        1 => DenseState::<u8>::required_bytes(n, h),
        2 => DenseState::<u16>::required_bytes(n, h),
        3 => DenseState::<u32>::required_bytes(n, h),
        4 => DenseState::<u128>::required_bytes(n, h),
        _ => DenseState::<U256>::required_bytes(n, h),
    }
}

/// Load, MergeAll, ReduceAll and extract with block type `B`.
pub fn find_primes_with<B: Block>(tt: &TruthTable, h: u32, opts: &DenseOptions) -> Result<PrimeSet> {
    let mut state = DenseState::<B>::load(tt, h, opts.mem_cap.resolve())?;
    if opts.fuse {
        state.merge_reduce_fused(opts.unroll);
    } else {
        state.pass(Op::Merge, opts.unroll);
        state.pass(Op::Reduce, opts.unroll);
    }
    Ok(state.extract())
}

/// All prime implicants of `tt` via the dense engine.
///
/// The block width is the smallest primitive that fits `3^h` bits (8, 16,
/// 32, 128 or 256 bits for `h = 1..=5`).
pub fn find_primes_dense(tt: &TruthTable, opts: &DenseOptions) -> Result<PrimeSet> {
    let n = tt.vars();
    let h = opts.h.unwrap_or_else(|| default_h(n));
    if h == 0 || h > n || h > MAX_H {
        return Err(Error::LayerSplit { h, n, max: MAX_H });
    }
    match h {
        1 => find_primes_with::<u8>(tt, h, opts),
        2 => find_primes_with::<u16>(tt, h, opts),
        3 => find_primes_with::<u32>(tt, h, opts),
        4 => find_primes_with::<u128>(tt, h, opts),
        _ => find_primes_with::<U256>(tt, h, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::{pow3, TernaryString};

    fn strings(set: &PrimeSet) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    fn maj3() -> TruthTable {
        // (x1,x2,x3) in {011,101,110,111}
        TruthTable::from_support(3, [0b110, 0b101, 0b011, 0b111]).unwrap()
    }

    fn all_options() -> Vec<DenseOptions> {
        let mut v = vec![];
        for unroll in [false, true] {
            for fuse in [false, true] {
                v.push(DenseOptions { unroll, fuse, ..Default::default() });
            }
        }
        v
    }

    #[test]
    fn majority_of_three() {
        for opts in all_options() {
            for h in 1..=3 {
                let p = find_primes_dense(&maj3(), &opts.with_h(h)).unwrap();
                // rank order: *11 = 14, 1*1 = 16, 11* = 22
                assert_eq!(strings(&p), ["*11", "1*1", "11*"]);
            }
        }
    }

    #[test]
    fn constant_one_merge_then_reduce() {
        for n in 1..=7 {
            let tt = TruthTable::full(n).unwrap();
            let h = default_h(n).min(3);
            let mut s = DenseState::<u32>::load(&tt, h, None).unwrap();
            s.pass(Op::Merge, false);
            assert_eq!(s.count_ones(), pow3(n));
            s.pass(Op::Reduce, false);
            assert_eq!(s.count_ones(), 1);
            assert!(s.get(pow3(n) - 1));
        }
    }

    #[test]
    fn single_point_survives_alone() {
        let tt = TruthTable::from_support(6, [37]).unwrap();
        let mut s = DenseState::<u32>::load(&tt, 3, None).unwrap();
        let before = s.clone();
        s.pass(Op::Merge, true);
        assert_eq!(s, before);
        s.pass(Op::Reduce, true);
        assert_eq!(s, before);
        assert_eq!(strings(&s.extract()), [TernaryString::from_point(37, 6).unwrap().to_string()]);
    }

    #[test]
    fn two_point_merge() {
        // points (0,0,1,1,0) and (0,1,1,1,0) merge on x2
        let p = |bits: [u64; 5]| bits.iter().enumerate().fold(0, |a, (i, b)| a | (b << i));
        let tt = TruthTable::from_support(5, [p([0, 0, 1, 1, 0]), p([0, 1, 1, 1, 0])]).unwrap();
        for opts in all_options() {
            assert_eq!(strings(&find_primes_dense(&tt, &opts).unwrap()), ["0*110"]);
        }
    }

    #[test]
    fn empty_support() {
        let tt = TruthTable::empty(8).unwrap();
        assert!(find_primes_dense(&tt, &DenseOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn layer_split_validated() {
        let tt = TruthTable::full(4).unwrap();
        assert!(matches!(
            find_primes_dense(&tt, &DenseOptions::default().with_h(5)),
            Err(Error::LayerSplit { h: 5, n: 4, .. })
        ));
        assert!(find_primes_dense(&tt, &DenseOptions::default().with_h(0)).is_err());
        assert_eq!(default_h(2), 2);
        assert_eq!(default_h(20), DEFAULT_H);
    }

    #[test]
    fn memory_cap_propagates() {
        let tt = TruthTable::full(12).unwrap();
        let opts = DenseOptions { mem_cap: MemCap::Bytes(1024), ..Default::default() };
        let err = find_primes_dense(&tt, &opts).unwrap_err();
        assert_eq!(err, Error::MemoryCap { required: required_bytes(12, DEFAULT_H), cap: 1024 });
        assert_eq!(required_bytes(12, 3), pow3(9) * 4);
        assert_eq!(required_bytes(12, 5), pow3(7) * 32);
    }
}
