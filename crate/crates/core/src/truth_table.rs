use crate::error::Result;
use crate::ternary::check_vars;

/// Support indicator of an `n`-variable Boolean function.
///
/// Point `x` is indexed by `sum_i 2^(i-1) x_i`, so `x_1` is the least
/// significant bit of the index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn empty(n: u32) -> Result<Self> {
        check_vars(n)?;
        let words = vec![0u64; Self::word_count(n)];
        Ok(TruthTable { n, words })
    }

    pub fn full(n: u32) -> Result<Self> {
        let mut tt = Self::empty(n)?;
        tt.words.fill(u64::MAX);
        tt.clear_tail();
        Ok(tt)
    }

    pub fn from_support<I: IntoIterator<Item = u64>>(n: u32, points: I) -> Result<Self> {
        let mut tt = Self::empty(n)?;
        for x in points {
            tt.set(x, true);
        }
        Ok(tt)
    }

    /// Builds a table from raw little-endian words; bits at or beyond `2^n` are dropped.
    pub fn from_words(n: u32, mut words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        words.resize(Self::word_count(n), 0);
        let mut tt = TruthTable { n, words };
        tt.clear_tail();
        Ok(tt)
    }

    fn word_count(n: u32) -> usize {
        ((1u64 << n) as usize).div_ceil(64)
    }

    fn clear_tail(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1u64 << self.n)) - 1;
        }
    }

    #[inline]
    pub fn vars(&self) -> u32 {
        self.n
    }

    /// Number of points, `2^n`.
    #[inline]
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        debug_assert!(x < self.len());
        (self.words[(x / 64) as usize] >> (x % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u64, value: bool) {
        assert!(x < self.len(), "point {x} out of range for n = {}", self.n);
        let w = &mut self.words[(x / 64) as usize];
        if value {
            *w |= 1 << (x % 64);
        } else {
            *w &= !(1 << (x % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn density(&self) -> f64 {
        self.count_ones() as f64 / self.len() as f64
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Support points in increasing index order.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u64 * 64;
            BitIter(w).map(move |b| base + b as u64)
        })
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruthTable")
            .field("n", &self.n)
            .field("ones", &self.count_ones())
            .finish()
    }
}

/// Positions of set bits, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}
