use std::ops::{BitAnd, BitOr, Not};

use super::block::Block;
use crate::error::{Error, Result};
use crate::prime_set::PrimeSet;
use crate::ternary::{check_vars, pow3, TernaryString};
use crate::truth_table::TruthTable;

/// `(z, o, s) -> (z, o, s | (z & o))`, bitwise.
#[inline(always)]
pub fn merge_triple<T>(zero: T, one: T, star: T) -> (T, T, T)
where
    T: Copy + BitAnd<Output = T> + BitOr<Output = T>,
{
    (zero, one, star | (zero & one))
}

/// `(z, o, s) -> (z & !s, o & !s, s)`, bitwise.
#[inline(always)]
pub fn reduce_triple<T>(zero: T, one: T, star: T) -> (T, T, T)
where
    T: Copy + BitAnd<Output = T> + Not<Output = T>,
{
    (zero & !star, one & !star, star)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Merge,
    Reduce,
}

/// Static dispatch over [`Op`] for the hot loops.
pub(crate) trait Transform {
    const OP: Op;
    fn apply<B: Block>(zero: B, one: B, star: B) -> (B, B, B);
}

pub(crate) struct MergeT;
pub(crate) struct ReduceT;

impl Transform for MergeT {
    const OP: Op = Op::Merge;
    #[inline(always)]
    fn apply<B: Block>(zero: B, one: B, star: B) -> (B, B, B) {
        merge_triple(zero, one, star)
    }
}

impl Transform for ReduceT {
    const OP: Op = Op::Reduce;
    #[inline(always)]
    fn apply<B: Block>(zero: B, one: B, star: B) -> (B, B, B) {
        reduce_triple(zero, one, star)
    }
}

/// Masks selecting, inside one block, the `0`-valued positions of each
/// bottom-layer dimension.
///
/// `mask(i)` has bits `3^i * b + c` set for `b < 3^(h-i)`, `c < 3^(i-1)`.
#[derive(Debug, Clone)]
pub struct MaskTable<B> {
    h: u32,
    masks: Vec<B>,
    valid: B,
}

impl<B: Block> MaskTable<B> {
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 || pow3(h) > B::BITS as u64 {
            return Err(Error::LayerSplit { h, n: h, max: max_h::<B>() });
        }
        let width = pow3(h) as u32;
        let mut valid = B::ZERO;
        for j in 0..width {
            valid = valid | B::bit(j);
        }
        let masks = (1..=h)
            .map(|i| {
                let mut m = B::ZERO;
                for b in 0..pow3(h - i) {
                    for c in 0..pow3(i - 1) {
                        m = m | B::bit((pow3(i) * b + c) as u32);
                    }
                }
                m
            })
            .collect();
        Ok(MaskTable { h, masks, valid })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Mask for bottom dimension `i`, `1 <= i <= h`.
    pub fn mask(&self, i: u32) -> B {
        self.masks[(i - 1) as usize]
    }

    pub fn masks(&self) -> &[B] {
        &self.masks
    }

    /// Bits `[0, 3^h)`.
    pub fn valid(&self) -> B {
        self.valid
    }
}

/// Largest `h` whose `3^h` bits fit one block of type `B`.
/// States at least this large ask for transparent huge pages.
const HUGE_PAGE_MIN_BYTES: u64 = 4 << 20;

/// Bytes of state worked on at once by the fused pass; inside L2.
const TILE_BYTES: usize = 1 << 20;

/// Top-layer dimensions whose triples all fall inside one tile.
fn tile_dims<B: Block>() -> u32 {
    let blocks = TILE_BYTES / std::mem::size_of::<B>();
    let mut k = 0;
    while pow3(k + 1) as usize <= blocks {
        k += 1;
    }
    k
}

/// Shortest row of a strided tile, in bytes. Rows of at least a page keep
/// the number of distinct pages per tile (and TLB misses) low.
const ROW_BYTES: usize = 4096;

/// Row length (a power of three, in blocks) used for strided tiles.
fn row_dims<B: Block>() -> u32 {
    let mut r = 0;
    while (pow3(r) as usize) * std::mem::size_of::<B>() < ROW_BYTES {
        r += 1;
    }
    r
}

/// The triple map over three equally long rows of blocks.
#[inline(always)]
fn apply_rows<T: Transform, B: Block>(zeros: &mut [B], ones: &mut [B], stars: &mut [B]) {
    match T::OP {
        Op::Merge => {
            for ((z, o), s) in zeros.iter().zip(ones.iter()).zip(stars.iter_mut()) {
                *s = T::apply(*z, *o, *s).2;
            }
        }
        Op::Reduce => {
            for ((z, o), s) in zeros.iter_mut().zip(ones.iter_mut()).zip(stars.iter()) {
                let (nz, no, _) = T::apply(*z, *o, *s);
                *z = nz;
                *o = no;
            }
        }
    }
}

/// Top-layer dimension `i` over `blocks`, whose length is a multiple of
/// `3^i`.
fn top_dimension_in<T: Transform, B: Block>(blocks: &mut [B], i: u32) -> u64 {
    let stride = pow3(i - 1) as usize;
    for group in blocks.chunks_exact_mut(3 * stride) {
        let (zeros, rest) = group.split_at_mut(stride);
        let (ones, stars) = rest.split_at_mut(stride);
        apply_rows::<T, B>(zeros, ones, stars);
    }
    (blocks.len() / 3) as u64
}

/// Top-layer dimensions `first..first + count` over the whole state, one
/// strided tile at a time. A tile holds the blocks `base + lo + stride * t`
/// for `lo < run` and `t < 3^count`, where `stride = 3^(first - 1)`: `3^count`
/// rows of `run` consecutive blocks. Adds the triples done per dimension to
/// `triples`.
fn top_group<T: Transform, B: Block>(blocks: &mut [B], first: u32, count: u32, run: usize, triples: &mut [u64]) {
    let stride = pow3(first - 1) as usize;
    let extent = stride * pow3(count) as usize;
    debug_assert!(stride.is_multiple_of(run) && blocks.len().is_multiple_of(extent));
    for span in blocks.chunks_exact_mut(extent) {
        for lo in (0..stride).step_by(run) {
            for j in 0..count {
                let step = stride * pow3(j) as usize;
                let inner = pow3(j) as usize;
                for outer in 0..pow3(count - j - 1) as usize {
                    for t in 0..inner {
                        let p = lo + stride * (outer * 3 * inner + t);
                        let (zeros, rest) = span[p..].split_at_mut(step);
                        let (ones, stars) = rest.split_at_mut(step);
                        apply_rows::<T, B>(&mut zeros[..run], &mut ones[..run], &mut stars[..run]);
                    }
                }
                triples[(first - 1 + j) as usize] += (run * extent / (3 * stride)) as u64;
            }
        }
    }
}

fn fused_dyn<B: Block>(blocks: &mut [B], masks: &[B]) {
    for v in blocks {
        let m = bottom_block_dyn::<MergeT, B>(*v, masks);
        *v = bottom_block_dyn::<ReduceT, B>(m, masks);
    }
}

fn fused_fixed<B: Block, const H: usize>(blocks: &mut [B], masks: &[B]) {
    let masks: [B; H] = masks[..H].try_into().expect("h matches");
    for v in blocks {
        let m = bottom_block_fixed::<MergeT, B, H>(*v, &masks);
        *v = bottom_block_fixed::<ReduceT, B, H>(m, &masks);
    }
}

pub fn max_h<B: Block>() -> u32 {
    let mut h = 0;
    while pow3(h + 1) <= B::BITS as u64 {
        h += 1;
    }
    h
}

/// Applies one bottom-layer dimension to a single block: shift, mask,
/// transform, recombine.
#[inline(always)]
fn bottom_step<T: Transform, B: Block>(v: B, mask: B, shift: usize) -> B {
    let s = v & mask;
    let t = (v >> shift) & mask;
    let u = (v >> (2 * shift)) & mask;
    let (s, t, u) = T::apply(s, t, u);
    s | (t << shift) | (u << (2 * shift))
}

#[inline]
fn bottom_block_dyn<T: Transform, B: Block>(mut v: B, masks: &[B]) -> B {
    let mut shift = 1usize;
    for &mask in masks {
        v = bottom_step::<T, B>(v, mask, shift);
        shift *= 3;
    }
    v
}

/// Same as [`bottom_block_dyn`] with `H` known at compile time, so the
/// dimension loop and all shift amounts are constants.
#[inline(always)]
fn bottom_block_fixed<T: Transform, B: Block, const H: usize>(mut v: B, masks: &[B; H]) -> B {
    const SHIFTS: [usize; 8] = [1, 3, 9, 27, 81, 243, 729, 2187];
    for k in 0..H {
        v = bottom_step::<T, B>(v, masks[k], SHIFTS[k]);
    }
    v
}

/// Counters recorded during one pass.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PassStats {
    /// Block triples transformed, per top-layer dimension `1..=n-h`.
    pub top_triples: Vec<u64>,
    /// Single-block bottom-layer dimension steps.
    pub bottom_steps: u64,
}

/// Indicator of a subset of `{0,1,*}^n`, split into `3^(n-h)` blocks of
/// `3^h` bits each.
///
/// Bit `b` of block `a` stands for the string of rank `a * 3^h + b`, so the
/// low `h` symbols live inside a block (bottom layer) and the high `n - h`
/// symbols select the block (top layer).
#[derive(Clone, PartialEq, Eq)]
pub struct DenseState<B: Block> {
    n: u32,
    masks: MaskTable<B>,
    blocks: Vec<B>,
}

impl<B: Block> std::fmt::Debug for DenseState<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DenseState")
            .field("n", &self.n)
            .field("h", &self.masks.h)
            .field("block_bits", &B::BITS)
            .field("blocks", &self.blocks.len())
            .finish()
    }
}

impl<B: Block> PartialEq for MaskTable<B> {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

impl<B: Block> Eq for MaskTable<B> {}

impl<B: Block> DenseState<B> {
    /// Bytes needed for the block array: `3^(n-h) * block_bits / 8`.
    pub fn required_bytes(n: u32, h: u32) -> u64 {
        pow3(n.saturating_sub(h)) * (B::BITS as u64 / 8)
    }

    /// All-zero state. Fails if the block array would exceed `mem_cap` bytes
    /// or cannot be allocated.
    pub fn zeroed(n: u32, h: u32, mem_cap: Option<u64>) -> Result<Self> {
        check_vars(n)?;
        let max = max_h::<B>();
        if h == 0 || h > n || h > max {
            return Err(Error::LayerSplit { h, n, max });
        }
        let required = Self::required_bytes(n, h);
        if let Some(cap) = mem_cap {
            if required > cap {
                return Err(Error::MemoryCap { required, cap });
            }
        }
        let count = pow3(n - h) as usize;
        let mut blocks: Vec<B> = Vec::new();
        blocks
            .try_reserve_exact(count)
            .map_err(|_| Error::Allocation { bytes: required })?;
        // before the first touch, so the zero fill already faults huge pages
        if required >= HUGE_PAGE_MIN_BYTES {
            crate::sys::advise_huge_pages(blocks.as_mut_ptr().cast(), required as usize);
        }
        blocks.resize(count, B::ZERO);
        Ok(DenseState {
            n,
            masks: MaskTable::new(h)?,
            blocks,
        })
    }

    /// Embeds the support of `tt` as star-free strings.
    pub fn load(tt: &TruthTable, h: u32, mem_cap: Option<u64>) -> Result<Self> {
        let n = tt.vars();
        let mut state = Self::zeroed(n, h, mem_cap)?;
        let low = binary_to_ternary_table(h);
        let high = BinaryToTernary::new();
        let low_mask = (1u64 << h) - 1;
        for x in tt.support() {
            let a = high.convert(x >> h);
            let b = low[(x & low_mask) as usize];
            state.blocks[a as usize] = state.blocks[a as usize] | B::bit(b);
        }
        Ok(state)
    }

    pub fn vars(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.masks.h
    }

    pub fn block_bits(&self) -> u32 {
        B::BITS
    }

    pub fn blocks(&self) -> &[B] {
        &self.blocks
    }

    pub fn masks(&self) -> &MaskTable<B> {
        &self.masks
    }

    fn split(&self, rank: u64) -> (usize, u32) {
        let w = pow3(self.h());
        ((rank / w) as usize, (rank % w) as u32)
    }

    /// Indicator bit for the string of the given rank.
    pub fn get(&self, rank: u64) -> bool {
        let (a, b) = self.split(rank);
        self.blocks[a].test(b)
    }

    pub fn set(&mut self, rank: u64, value: bool) {
        assert!(rank < pow3(self.n));
        let (a, b) = self.split(rank);
        let bit = B::bit(b);
        self.blocks[a] = if value { self.blocks[a] | bit } else { self.blocks[a] & !bit };
    }

    pub fn count_ones(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Every bit at index `>= 3^h` inside every block is zero.
    pub fn padding_is_clear(&self) -> bool {
        let pad = !self.masks.valid;
        self.blocks.iter().all(|&b| (b & pad).is_zero())
    }

    /// Applies `op` to every triple of dimension `var` (0-based variable
    /// index): inside blocks when `var < h`, across blocks otherwise.
    /// Returns the number of block operations: block triples for a top-layer
    /// dimension, single blocks for a bottom-layer one.
    pub fn apply_dimension(&mut self, op: Op, var: u32) -> u64 {
        assert!(var < self.n, "dimension {var} out of range");
        let h = self.h();
        match (op, var < h) {
            (Op::Merge, false) => self.top_dimension::<MergeT>(var - h + 1),
            (Op::Reduce, false) => self.top_dimension::<ReduceT>(var - h + 1),
            (Op::Merge, true) => self.bottom_dimension::<MergeT>(var + 1),
            (Op::Reduce, true) => self.bottom_dimension::<ReduceT>(var + 1),
        }
    }

    /// Applies `op` along every dimension, in the order given (a permutation
    /// of `0..n`).
    pub fn pass_in_order(&mut self, op: Op, order: &[u32]) {
        let mut seen = vec![false; self.n as usize];
        for &v in order {
            assert!(!std::mem::replace(&mut seen[v as usize], true), "dimension {v} repeated");
        }
        assert!(seen.iter().all(|&s| s), "order must cover every dimension");
        for &v in order {
            self.apply_dimension(op, v);
        }
    }

    /// One full MergeAll or ReduceAll pass: top-layer dimensions, then the
    /// bottom layer block by block.
    pub fn pass(&mut self, op: Op, unroll: bool) -> PassStats {
        match op {
            Op::Merge => self.pass_t::<MergeT>(unroll),
            Op::Reduce => self.pass_t::<ReduceT>(unroll),
        }
    }

    fn pass_t<T: Transform>(&mut self, unroll: bool) -> PassStats {
        let top_triples = (1..=self.n - self.h()).map(|i| self.top_dimension::<T>(i)).collect();
        let bottom_steps = self.bottom_layer::<T>(unroll);
        PassStats { top_triples, bottom_steps }
    }

    /// MergeAll followed by ReduceAll in fewer sweeps over memory.
    ///
    /// Dimensions within one pass commute, so the work is regrouped into
    /// cache-sized tiles. The high top-layer dimensions are merged first, a
    /// few at a time over strided tiles. Then each tile of consecutive
    /// blocks gets its low top-layer merges, both bottom layers and its low
    /// top-layer reduces in one visit. The high dimensions are reduced last.
    pub fn merge_reduce_fused(&mut self, unroll: bool) -> (PassStats, PassStats) {
        let top = self.n - self.h();
        let low = top.min(tile_dims::<B>());
        let mut merge_top = vec![0u64; top as usize];
        let mut reduce_top = vec![0u64; top as usize];
        let groups = self.high_groups(low);
        for &(first, count, run) in &groups {
            top_group::<MergeT, B>(&mut self.blocks, first, count, run, &mut merge_top);
        }
        let steps = match (unroll, self.h()) {
            (true, 1) => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_fixed::<B, 1>),
            (true, 2) => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_fixed::<B, 2>),
            (true, 3) => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_fixed::<B, 3>),
            (true, 4) => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_fixed::<B, 4>),
            (true, 5) => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_fixed::<B, 5>),
            _ => self.fused_tiles(low, &mut merge_top, &mut reduce_top, fused_dyn::<B>),
        };
        for &(first, count, run) in groups.iter().rev() {
            top_group::<ReduceT, B>(&mut self.blocks, first, count, run, &mut reduce_top);
        }
        (
            PassStats { top_triples: merge_top, bottom_steps: steps },
            PassStats { top_triples: reduce_top, bottom_steps: steps },
        )
    }

    /// `(first, count, run)` for the top-layer dimensions above `low`, each
    /// group sized so that one strided tile fits the tile budget.
    fn high_groups(&self, low: u32) -> Vec<(u32, u32, usize)> {
        let top = self.n - self.h();
        let r = row_dims::<B>().min(low);
        let per_group = (low - r).max(1);
        let mut groups = Vec::new();
        let mut first = low + 1;
        while first <= top {
            let count = per_group.min(top - first + 1);
            groups.push((first, count, pow3(r) as usize));
            first += count;
        }
        groups
    }

    /// Per tile of `3^low` blocks: merge top dims `1..=low`, both bottom
    /// layers via `bottom`, reduce top dims `low..=1`.
    fn fused_tiles(
        &mut self,
        low: u32,
        merge_top: &mut [u64],
        reduce_top: &mut [u64],
        bottom: fn(&mut [B], &[B]),
    ) -> u64 {
        let masks = self.masks.masks.clone();
        for tile in self.blocks.chunks_exact_mut(pow3(low) as usize) {
            for i in 1..=low {
                merge_top[i as usize - 1] += top_dimension_in::<MergeT, B>(tile, i);
            }
            bottom(tile, &masks);
            for i in (1..=low).rev() {
                reduce_top[i as usize - 1] += top_dimension_in::<ReduceT, B>(tile, i);
            }
        }
        self.blocks.len() as u64 * self.h() as u64
    }

    /// Top-layer dimension `i` (`1 <= i <= n - h`): block triples at
    /// `(b + c, b + c + 3^(i-1), b + c + 2 * 3^(i-1))`.
    fn top_dimension<T: Transform>(&mut self, i: u32) -> u64 {
        top_dimension_in::<T, B>(&mut self.blocks, i)
    }

    /// Bottom-layer dimension `i` (`1 <= i <= h`) on every block.
    fn bottom_dimension<T: Transform>(&mut self, i: u32) -> u64 {
        let mask = self.masks.mask(i);
        let shift = pow3(i - 1) as usize;
        for v in self.blocks.iter_mut() {
            *v = bottom_step::<T, B>(*v, mask, shift);
        }
        self.blocks.len() as u64
    }

    fn bottom_layer<T: Transform>(&mut self, unroll: bool) -> u64 {
        if unroll {
            match self.h() {
                1 => return self.bottom_layer_fixed::<T, 1>(),
                2 => return self.bottom_layer_fixed::<T, 2>(),
                3 => return self.bottom_layer_fixed::<T, 3>(),
                4 => return self.bottom_layer_fixed::<T, 4>(),
                5 => return self.bottom_layer_fixed::<T, 5>(),
                _ => {}
            }
        }
        let masks = self.masks.masks.clone();
        for v in self.blocks.iter_mut() {
            *v = bottom_block_dyn::<T, B>(*v, &masks);
        }
        self.blocks.len() as u64 * self.h() as u64
    }

    fn bottom_layer_fixed<T: Transform, const H: usize>(&mut self) -> u64 {
        let masks: [B; H] = self.masks.masks[..H].try_into().expect("h matches");
        for v in self.blocks.iter_mut() {
            *v = bottom_block_fixed::<T, B, H>(*v, &masks);
        }
        self.blocks.len() as u64 * H as u64
    }

    /// Every string whose bit is set, in increasing rank order.
    pub fn extract(&self) -> PrimeSet {
        let n = self.n;
        let h = self.h();
        let low_codes: Vec<u64> = (0..pow3(h))
            .map(|b| TernaryString::unrank_unchecked(b, h).code())
            .collect();
        let pad = !self.masks.valid;
        let mut out = Vec::new();
        for (a, &block) in self.blocks.iter().enumerate() {
            if block.is_zero() {
                continue;
            }
            assert!((block & pad).is_zero(), "padding bits set in block {a}");
            let high = if n > h {
                TernaryString::unrank_unchecked(a as u64, n - h).code() << (2 * h)
            } else {
                0
            };
            block.for_each_one(|b| out.push(TernaryString::from_code(high | low_codes[b as usize], n)));
        }
        PrimeSet::from_sorted(n, out)
    }
}

/// `T[x] = sum_k 3^k * bit_k(x)` for `x < 2^bits`.
fn binary_to_ternary_table(bits: u32) -> Vec<u32> {
    (0..1u64 << bits)
        .map(|x| (0..bits).filter(|&k| (x >> k) & 1 == 1).map(pow3).sum::<u64>() as u32)
        .collect()
}

/// Byte-at-a-time conversion of a binary point to the rank of its
/// star-free string.
struct BinaryToTernary {
    byte: Vec<u32>,
}

impl BinaryToTernary {
    fn new() -> Self {
        BinaryToTernary { byte: binary_to_ternary_table(8) }
    }

    #[inline]
    fn convert(&self, mut x: u64) -> u64 {
        let mut r = 0u64;
        let mut scale = 1u64;
        while x != 0 {
            r += self.byte[(x & 0xFF) as usize] as u64 * scale;
            scale *= pow3(8);
            x >>= 8;
        }
        r
    }
}
