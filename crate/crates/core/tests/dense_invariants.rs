mod common;

use common::{cases, permutation, table, DENSITIES};
use qmc_core::dense::{default_h, find_primes_with, max_h};
use qmc_core::{find_primes_dense, Block, DenseOptions, DenseState, MemCap, Op, TruthTable, U256};

fn merged<B: Block>(tt: &TruthTable, h: u32) -> DenseState<B> {
    let mut st = DenseState::<B>::load(tt, h, None).unwrap();
    st.pass(Op::Merge, true);
    st
}

#[test]
fn passes_are_idempotent() {
    for (n, _, _, tt) in cases(1..=9, &DENSITIES, 2) {
        let h = default_h(n);
        let mut st = merged::<U256>(&tt, h);
        let once = st.blocks().to_vec();
        st.pass(Op::Merge, true);
        assert_eq!(st.blocks(), &once[..], "merge twice, n={n}");
        st.pass(Op::Reduce, true);
        let once = st.blocks().to_vec();
        st.pass(Op::Reduce, false);
        assert_eq!(st.blocks(), &once[..], "reduce twice, n={n}");
    }
}

#[test]
fn dimension_order_does_not_matter() {
    for (n, _, seed, tt) in cases(2..=9, &[0.3, 0.6, 0.9], 2) {
        let h = default_h(n).min(3);
        let mut want = merged::<u32>(&tt, h);
        let merged_state = want.blocks().to_vec();
        want.pass(Op::Reduce, true);
        for k in 0..4 {
            let order = permutation(n, seed * 31 + k);
            let mut st = DenseState::<u32>::load(&tt, h, None).unwrap();
            st.pass_in_order(Op::Merge, &order);
            assert_eq!(st.blocks(), &merged_state[..], "merge order {order:?}");
            let order = permutation(n, seed * 31 + k + 100);
            st.pass_in_order(Op::Reduce, &order);
            assert_eq!(st.blocks(), want.blocks(), "reduce order {order:?}");
        }
    }
}

#[test]
fn layer_split_does_not_change_the_result() {
    for (n, _, _, tt) in cases(1..=10, &[0.2, 0.5, 0.8], 2) {
        let base = find_primes_dense(&tt, &DenseOptions::default().with_h(1)).unwrap();
        for h in 2..=n.min(5) {
            let got = find_primes_dense(&tt, &DenseOptions::default().with_h(h)).unwrap();
            assert_eq!(got, base, "n={n} h={h}");
        }
    }
}

#[test]
fn wider_blocks_than_needed_agree() {
    // h = 3 fits in u32, u64, u128 and U256 alike
    let tt = table(8, 0.6, 5);
    let opts = DenseOptions::default();
    let want = find_primes_with::<u32>(&tt, 3, &opts).unwrap();
    assert_eq!(find_primes_with::<u64>(&tt, 3, &opts).unwrap(), want);
    assert_eq!(find_primes_with::<u128>(&tt, 3, &opts).unwrap(), want);
    assert_eq!(find_primes_with::<U256>(&tt, 3, &opts).unwrap(), want);
    assert_eq!(max_h::<u64>(), 3);
}

fn padding_after_every_dimension<B: Block>(tt: &TruthTable, h: u32) {
    let n = tt.vars();
    let mut st = DenseState::<B>::load(tt, h, None).unwrap();
    assert!(st.padding_is_clear());
    for op in [Op::Merge, Op::Reduce] {
        for v in 0..n {
            st.apply_dimension(op, v);
            assert!(st.padding_is_clear(), "{op:?} dim {v} n={n} h={h}");
        }
    }
}

#[test]
fn padding_bits_stay_clear() {
    for (n, _, _, tt) in cases(1..=8, &[0.5, 1.0], 1) {
        padding_after_every_dimension::<u8>(&tt, 1);
        if n >= 2 {
            padding_after_every_dimension::<u16>(&tt, 2);
        }
        if n >= 3 {
            padding_after_every_dimension::<u32>(&tt, 3);
        }
        if n >= 4 {
            padding_after_every_dimension::<u128>(&tt, 4);
        }
        if n >= 5 {
            padding_after_every_dimension::<U256>(&tt, 5);
            let mut st = DenseState::<U256>::load(&tt, 5, None).unwrap();
            st.merge_reduce_fused(true);
            assert!(st.padding_is_clear());
        }
    }
}

#[test]
fn reference_and_optimized_paths_agree() {
    for (n, _, _, tt) in cases(3..=11, &[0.1, 0.5, 0.9], 1) {
        let want = find_primes_dense(&tt, &DenseOptions::reference()).unwrap();
        for unroll in [false, true] {
            for fuse in [false, true] {
                for h in 1..=n.min(5) {
                    let opts = DenseOptions { h: Some(h), unroll, fuse, mem_cap: MemCap::Unlimited };
                    assert_eq!(find_primes_dense(&tt, &opts).unwrap(), want, "n={n} h={h} unroll={unroll} fuse={fuse}");
                }
            }
        }
    }
}

#[test]
fn merged_state_is_the_implicant_indicator() {
    let tt = table(6, 0.7, 3);
    let st = merged::<U256>(&tt, 5);
    for r in 0..3u64.pow(6) {
        let s = qmc_core::TernaryString::unrank(qmc_core::Rank(r), 6).unwrap();
        assert_eq!(st.get(r), qmc_core::is_implicant(&s, &tt).unwrap(), "{s}");
    }
}

fn fused_matches_separate_passes<B: Block>(tt: &TruthTable, h: u32) {
    let n = tt.vars();
    let mut a = DenseState::<B>::load(tt, h, None).unwrap();
    let mut b = a.clone();
    let (m, r) = a.merge_reduce_fused(true);
    b.pass(Op::Merge, false);
    b.pass(Op::Reduce, false);
    assert!(a.blocks() == b.blocks(), "fused state differs at n={n} h={h}");
    // every top-layer dimension touches each block triple exactly once
    let per_dim = 3u64.pow(n - h - 1);
    assert!(m.top_triples.iter().chain(&r.top_triples).all(|&t| t == per_dim), "n={n} h={h}");
    assert_eq!(m.top_triples.len(), (n - h) as usize);
}

/// Sizes where the high top-layer dimensions no longer fit in one tile.
#[test]
fn fused_pass_matches_beyond_one_tile() {
    for n in [13, 14, 16] {
        let tt = table(n, 0.6, n as u64);
        fused_matches_separate_passes::<u8>(&tt, 1);
        fused_matches_separate_passes::<u16>(&tt, 2);
        fused_matches_separate_passes::<u32>(&tt, 3);
        fused_matches_separate_passes::<u128>(&tt, 4);
        fused_matches_separate_passes::<U256>(&tt, 5);
    }
    let tt = table(17, 0.5, 3);
    fused_matches_separate_passes::<u32>(&tt, 3);
}
