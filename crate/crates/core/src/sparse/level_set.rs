use crate::error::{Error, Result};
use crate::ternary::PackedImplicant;

const OCCUPIED: u64 = PackedImplicant::FLAG_OCCUPIED;
const DELETED: u64 = PackedImplicant::FLAG_DELETED;
const KEY: u64 = !(OCCUPIED | DELETED);

/// Largest table the set will grow to (slots).
const MAX_SLOTS: usize = 1 << 40;

#[inline]
fn mix(x: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Open-addressing set of packed implicants with linear probing.
///
/// A slot stores the implicant with the OCCUPIED control bit set; an empty
/// slot is `0`. Removal only sets the DELETED control bit in place, so the
/// probe chains are never disturbed and the table never shrinks.
#[derive(Clone)]
pub struct LevelSet {
    slots: Vec<u64>,
    mask: usize,
    live: usize,
    deleted: usize,
}

impl std::fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevelSet")
            .field("slots", &self.slots.len())
            .field("live", &self.live)
            .field("deleted", &self.deleted)
            .finish()
    }
}

impl Default for LevelSet {
    fn default() -> Self {
        Self::with_capacity(0).expect("small table")
    }
}

impl LevelSet {
    /// Room for `items` entries at load factor at most 1/2.
    pub fn with_capacity(items: usize) -> Result<Self> {
        let size = (items.max(4) * 2).next_power_of_two();
        Ok(LevelSet {
            slots: alloc_slots(size)?,
            mask: size - 1,
            live: 0,
            deleted: 0,
        })
    }

    pub fn from_items(items: &[PackedImplicant]) -> Result<Self> {
        let mut set = Self::with_capacity(items.len())?;
        for &p in items {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Entries not marked deleted.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn deleted_len(&self) -> usize {
        self.deleted
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    /// Slot holding `key`, or the empty slot where it would go.
    #[inline]
    fn find(&self, key: u64) -> usize {
        let mut i = mix(key) as usize & self.mask;
        loop {
            let s = self.slots[i];
            if s == 0 || s & KEY == key {
                return i;
            }
            i = (i + 1) & self.mask;
        }
    }

    /// Inserts `p`; returns `true` if it was not present (live or deleted).
    pub fn insert(&mut self, p: PackedImplicant) -> Result<bool> {
        debug_assert!(p.is_canonical());
        if (self.live + self.deleted + 1) * 2 > self.slots.len() {
            self.grow()?;
        }
        let i = self.find(p.0);
        if self.slots[i] != 0 {
            return Ok(false);
        }
        self.slots[i] = p.0 | OCCUPIED;
        self.live += 1;
        Ok(true)
    }

    /// Present and not marked deleted.
    #[inline]
    pub fn contains(&self, p: PackedImplicant) -> bool {
        let s = self.slots[self.find(p.0)];
        s != 0 && s & DELETED == 0
    }

    /// Present, whether or not marked deleted.
    #[inline]
    pub fn contains_any(&self, p: PackedImplicant) -> bool {
        self.slots[self.find(p.0)] != 0
    }

    /// Marks `p` deleted. Returns `false` if it was absent or already marked.
    #[inline]
    pub fn mark_deleted(&mut self, p: PackedImplicant) -> bool {
        let i = self.find(p.0);
        let s = self.slots[i];
        if s == 0 || s & DELETED != 0 {
            return false;
        }
        self.slots[i] = s | DELETED;
        self.live -= 1;
        self.deleted += 1;
        true
    }

    /// Live entries, each exactly once, in slot order.
    pub fn live_items(&self) -> impl Iterator<Item = PackedImplicant> + '_ {
        self.slots
            .iter()
            .filter(|&&s| s & (OCCUPIED | DELETED) == OCCUPIED)
            .map(|&s| PackedImplicant(s & KEY))
    }

    /// Live and deleted entries, each exactly once.
    pub fn all_items(&self) -> impl Iterator<Item = PackedImplicant> + '_ {
        self.slots
            .iter()
            .filter(|&&s| s != 0)
            .map(|&s| PackedImplicant(s & KEY))
    }

    fn grow(&mut self) -> Result<()> {
        let size = self.slots.len() * 2;
        if size > MAX_SLOTS {
            return Err(Error::Allocation { bytes: size as u64 * 8 });
        }
        let old = std::mem::replace(&mut self.slots, alloc_slots(size)?);
        self.mask = size - 1;
        for s in old.into_iter().filter(|&s| s != 0) {
            let i = self.find(s & KEY);
            self.slots[i] = s;
        }
        Ok(())
    }
}

fn alloc_slots(size: usize) -> Result<Vec<u64>> {
    let mut v = Vec::new();
    v.try_reserve_exact(size)
        .map_err(|_| Error::Allocation { bytes: size as u64 * 8 })?;
    v.resize(size, 0);
    Ok(v)
}
