//! Block words for the bottom layer of the dense state.
//!
//! A block holds the `3^h`-bit indicator of a subset of `{0,1,*}^h`, aligned
//! to bit 0. Any primitive unsigned integer works as a block through
//! [`num_traits::PrimInt`]; [`U256`] adds a four-lane 256-bit block, the
//! natural fit for `h = 5` (243 of 256 bits used).

use std::fmt::Debug;
use std::ops::{BitAnd, BitOr, Not, Shl, Shr};

use num_traits::{ConstZero, PrimInt, Unsigned};

/// Bit-vector type used as one dense-state block.
pub trait Block:
    Copy
    + Eq
    + Debug
    + Send
    + Sync
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + Not<Output = Self>
    + Shl<usize, Output = Self>
    + Shr<usize, Output = Self>
{
    const BITS: u32;
    const ZERO: Self;

    /// Single bit `i` set.
    fn bit(i: u32) -> Self;

    fn test(self, i: u32) -> bool;

    fn count_ones(self) -> u32;

    /// Calls `f` with every set bit position, lowest first.
    fn for_each_one(self, f: impl FnMut(u32));

    #[inline]
    fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl<T> Block for T
where
    T: PrimInt + Unsigned + ConstZero + Debug + Send + Sync + Shl<usize, Output = T> + Shr<usize, Output = T>,
{
    const BITS: u32 = (std::mem::size_of::<T>() * 8) as u32;
    const ZERO: Self = <T as ConstZero>::ZERO;

    #[inline]
    fn bit(i: u32) -> Self {
        T::one() << (i as usize)
    }

    #[inline]
    fn test(self, i: u32) -> bool {
        (self >> (i as usize)) & T::one() == T::one()
    }

    #[inline]
    fn count_ones(self) -> u32 {
        PrimInt::count_ones(self)
    }

    #[inline]
    fn for_each_one(self, mut f: impl FnMut(u32)) {
        let mut v = self;
        while v != T::zero() {
            let b = v.trailing_zeros();
            f(b);
            v = v & (v - T::one());
        }
    }
}

/// 256-bit block as four little-endian 64-bit lanes.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
#[repr(C, align(32))]
pub struct U256(pub [u64; 4]);

impl Debug for U256 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "U256({:016x}_{:016x}_{:016x}_{:016x})",
            self.0[3], self.0[2], self.0[1], self.0[0]
        )
    }
}

impl BitAnd for U256 {
    type Output = U256;
    #[inline(always)]
    fn bitand(self, rhs: U256) -> U256 {
        U256([
            self.0[0] & rhs.0[0],
            self.0[1] & rhs.0[1],
            self.0[2] & rhs.0[2],
            self.0[3] & rhs.0[3],
        ])
    }
}

impl BitOr for U256 {
    type Output = U256;
    #[inline(always)]
    fn bitor(self, rhs: U256) -> U256 {
        U256([
            self.0[0] | rhs.0[0],
            self.0[1] | rhs.0[1],
            self.0[2] | rhs.0[2],
            self.0[3] | rhs.0[3],
        ])
    }
}

impl Not for U256 {
    type Output = U256;
    #[inline(always)]
    fn not(self) -> U256 {
        U256([!self.0[0], !self.0[1], !self.0[2], !self.0[3]])
    }
}

impl U256 {
    #[inline(always)]
    fn halves(self) -> (u128, u128) {
        let w = self.0;
        (w[0] as u128 | (w[1] as u128) << 64, w[2] as u128 | (w[3] as u128) << 64)
    }

    #[inline(always)]
    fn from_halves(lo: u128, hi: u128) -> U256 {
        U256([lo as u64, (lo >> 64) as u64, hi as u64, (hi >> 64) as u64])
    }
}

// Shifts go through two u128 halves, which compile to a few double-word
// shift instructions instead of a per-lane loop.
impl Shl<usize> for U256 {
    type Output = U256;
    #[inline(always)]
    fn shl(self, s: usize) -> U256 {
        let (lo, hi) = self.halves();
        match s {
            0 => self,
            1..=127 => U256::from_halves(lo << s, hi << s | lo >> (128 - s)),
            128..=255 => U256::from_halves(0, lo << (s - 128)),
            _ => U256::ZERO,
        }
    }
}

impl Shr<usize> for U256 {
    type Output = U256;
    #[inline(always)]
    fn shr(self, s: usize) -> U256 {
        let (lo, hi) = self.halves();
        match s {
            0 => self,
            1..=127 => U256::from_halves(lo >> s | hi << (128 - s), hi >> s),
            128..=255 => U256::from_halves(hi >> (s - 128), 0),
            _ => U256::ZERO,
        }
    }
}

impl Block for U256 {
    const BITS: u32 = 256;
    const ZERO: Self = U256([0; 4]);

    #[inline]
    fn bit(i: u32) -> Self {
        let mut out = [0u64; 4];
        out[(i / 64) as usize] = 1 << (i % 64);
        U256(out)
    }

    #[inline]
    fn test(self, i: u32) -> bool {
        (self.0[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    #[inline]
    fn count_ones(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    fn for_each_one(self, mut f: impl FnMut(u32)) {
        for (lane, &w) in self.0.iter().enumerate() {
            let mut v = w;
            while v != 0 {
                f(lane as u32 * 64 + v.trailing_zeros());
                v &= v - 1;
            }
        }
    }
}
