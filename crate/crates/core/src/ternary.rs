//! Minterm strings over `{0, 1, *}`.
//!
//! A [`TernaryString`] of length `n` stores symbol `k` (0-based) in bits
//! `2k..2k+2` of a `u64`, using `00 -> 0`, `01 -> 1`, `10 -> *`. The 2-bit
//! chunk value coincides with the base-3 digit of the symbol, so the rank
//! `sum_k 3^k * digit_k` is read straight off the chunks. Variable `x_1` is
//! symbol 0 and is the least significant digit, both here and in truth-table
//! point indices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest variable count representable in a packed word (2 bits per symbol
/// plus 2 control bits).
pub const MAX_VARS: u32 = 31;

/// Chunk low bits: `0b0101...01` over all 32 chunks.
pub(crate) const LOW_BITS: u64 = 0x5555_5555_5555_5555;
/// Chunk high bits: `0b1010...10` over all 32 chunks.
pub(crate) const HIGH_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

const POW3: [u64; 41] = {
    let mut t = [1u64; 41];
    let mut i = 1;
    while i < 41 {
        t[i] = t[i - 1] * 3;
        i += 1;
    }
    t
};

/// `3^k` for `k <= 40`.
#[inline]
pub const fn pow3(k: u32) -> u64 {
    POW3[k as usize]
}

/// Mask covering the `2n` symbol bits of an `n`-variable code.
#[inline]
pub(crate) const fn code_mask(n: u32) -> u64 {
    if n >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

/// Spreads the low 32 bits of `x` to the even bit positions.
#[inline]
pub(crate) fn spread_bits(x: u64) -> u64 {
    let mut x = x & 0xFFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & LOW_BITS;
    x
}

/// Inverse of [`spread_bits`]: gathers the even bit positions.
#[inline]
pub(crate) fn gather_bits(x: u64) -> u64 {
    let mut x = x & LOW_BITS;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x
}

pub(crate) fn check_vars(n: u32) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::VariableCount { n, max: MAX_VARS });
    }
    Ok(())
}

/// One symbol of a minterm string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trit {
    Zero,
    One,
    Star,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Zero, Trit::One, Trit::Star];

    /// Base-3 digit, which is also the 2-bit packed chunk.
    #[inline]
    pub const fn digit(self) -> u64 {
        match self {
            Trit::Zero => 0,
            Trit::One => 1,
            Trit::Star => 2,
        }
    }

    #[inline]
    pub(crate) fn from_chunk(chunk: u64) -> Trit {
        match chunk & 3 {
            0 => Trit::Zero,
            1 => Trit::One,
            _ => Trit::Star,
        }
    }

    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit::Zero),
            '1' => Some(Trit::One),
            '*' | '-' => Some(Trit::Star),
            _ => None,
        }
    }

    pub fn to_char(self, wildcard: char) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Star => wildcard,
        }
    }
}

/// Base-3 index of a minterm string, in `[0, 3^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank(pub u64);

impl Rank {
    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }
}

/// 64-bit machine encoding of a minterm string. The top two bits are
/// control flags; they are zero in every value handed out by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedImplicant(pub u64);

impl PackedImplicant {
    pub const FLAG_DELETED: u64 = 1 << 63;
    pub const FLAG_OCCUPIED: u64 = 1 << 62;
    pub const FLAGS: u64 = Self::FLAG_DELETED | Self::FLAG_OCCUPIED;

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Flags clear and no chunk equal to `11`.
    pub fn is_canonical(self) -> bool {
        let code = self.0;
        code & Self::FLAGS == 0 && code & (code >> 1) & LOW_BITS == 0
    }
}

/// A length-`n` string over `{0, 1, *}`; symbol `k` belongs to `x_{k+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TernaryString {
    n: u8,
    code: u64,
}

impl TernaryString {
    /// The all-`0` string.
    pub fn zeros(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(TernaryString { n: n as u8, code: 0 })
    }

    /// The all-`*` string.
    pub fn stars(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(TernaryString {
            n: n as u8,
            code: HIGH_BITS & code_mask(n),
        })
    }

    pub fn from_trits(trits: &[Trit]) -> Result<Self> {
        let n = trits.len() as u32;
        check_vars(n)?;
        let code = trits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, t)| acc | (t.digit() << (2 * k)));
        Ok(TernaryString { n: n as u8, code })
    }

    /// The star-free string of binary point `x` (bit `k` of `x` is `x_{k+1}`).
    pub fn from_point(x: u64, n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(Self::from_point_unchecked(x, n))
    }

    #[inline]
    pub(crate) fn from_point_unchecked(x: u64, n: u32) -> Self {
        TernaryString {
            n: n as u8,
            code: spread_bits(x) & code_mask(n),
        }
    }

    /// Builds a string from its raw symbol code; `code` must be canonical for `n`.
    #[inline]
    pub(crate) fn from_code(code: u64, n: u32) -> Self {
        debug_assert!(PackedImplicant(code).is_canonical() && code & !code_mask(n) == 0);
        TernaryString { n: n as u8, code }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn vars(&self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub(crate) fn code(&self) -> u64 {
        self.code
    }

    /// Symbol at 0-based position `k`.
    #[inline]
    pub fn get(&self, k: usize) -> Trit {
        assert!(k < self.len(), "position {k} out of range for length {}", self.n);
        Trit::from_chunk(self.code >> (2 * k))
    }

    /// Copy with symbol `k` replaced.
    #[inline]
    pub fn with(&self, k: usize, t: Trit) -> Self {
        assert!(k < self.len(), "position {k} out of range for length {}", self.n);
        let shift = 2 * k;
        TernaryString {
            n: self.n,
            code: (self.code & !(3 << shift)) | (t.digit() << shift),
        }
    }

    pub fn trits(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    /// Number of wildcards.
    #[inline]
    pub fn weight(&self) -> u32 {
        (self.code & HIGH_BITS).count_ones()
    }

    /// Bit `k` set iff symbol `k` is `*`.
    #[inline]
    pub fn star_positions(&self) -> u64 {
        gather_bits(self.code >> 1)
    }

    /// Bit `k` set iff symbol `k` is `1`.
    #[inline]
    pub fn one_positions(&self) -> u64 {
        gather_bits(self.code)
    }

    pub fn rank(&self) -> Rank {
        let mut r = 0u64;
        for k in (0..self.len()).rev() {
            r = r * 3 + ((self.code >> (2 * k)) & 3);
        }
        Rank(r)
    }

    pub fn unrank(rank: Rank, n: u32) -> Result<Self> {
        check_vars(n)?;
        if rank.0 >= pow3(n) {
            return Err(Error::RankOutOfRange { rank: rank.0, n });
        }
        Ok(Self::unrank_unchecked(rank.0, n))
    }

    #[inline]
    pub(crate) fn unrank_unchecked(mut r: u64, n: u32) -> Self {
        let mut code = 0u64;
        for k in 0..n {
            code |= (r % 3) << (2 * k);
            r /= 3;
        }
        TernaryString { n: n as u8, code }
    }

    #[inline]
    pub fn pack(&self) -> PackedImplicant {
        PackedImplicant(self.code)
    }

    pub fn unpack(p: PackedImplicant, n: u32) -> Result<Self> {
        check_vars(n)?;
        let code = p.0 & !PackedImplicant::FLAGS;
        if code & !code_mask(n) != 0 || code & (code >> 1) & LOW_BITS != 0 {
            return Err(Error::InvalidPacked { bits: p.0, n });
        }
        Ok(TernaryString { n: n as u8, code })
    }

    /// True iff every non-`*` symbol equals the matching coordinate of point `x`.
    #[inline]
    pub fn covers(&self, x: u64) -> bool {
        let fixed = !(self.code >> 1) & LOW_BITS & code_mask(self.vars());
        (spread_bits(x) ^ self.code) & fixed == 0
    }

    /// True iff every point covered by `other` is covered by `self`.
    pub fn covers_string(&self, other: &TernaryString) -> bool {
        assert_eq!(self.n, other.n);
        let fixed = !(self.code >> 1) & LOW_BITS & code_mask(self.vars());
        // each fixed position of self must hold the same non-star symbol in other
        let fixed_chunks = fixed | (fixed << 1);
        (self.code ^ other.code) & fixed_chunks == 0
    }

    pub fn display_with(&self, wildcard: char) -> String {
        self.trits().map(|t| t.to_char(wildcard)).collect()
    }
}

impl fmt::Display for TernaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('*'))
    }
}

impl fmt::Debug for TernaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for TernaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trits = s
            .chars()
            .enumerate()
            .map(|(i, c)| Trit::from_char(c).ok_or(Error::InvalidSymbol { symbol: c, position: i }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_trits(&trits)
    }
}
