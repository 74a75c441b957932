use std::collections::BTreeSet;

use crate::ternary::TernaryString;
use crate::truth_table::TruthTable;

/// A set of minterm strings over a fixed `n`, kept sorted by rank.
///
/// Every engine returns one of these, so equality is plain set equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    n: u32,
    items: Vec<TernaryString>,
}

impl PrimeSet {
    /// Takes strings in arbitrary order; duplicates are removed.
    pub fn new(n: u32, mut items: Vec<TernaryString>) -> Self {
        assert!(items.iter().all(|s| s.vars() == n));
        items.sort_by_cached_key(|s| s.rank());
        items.dedup();
        PrimeSet { n, items }
    }

    /// Caller guarantees `items` is strictly increasing by rank.
    pub(crate) fn from_sorted(n: u32, items: Vec<TernaryString>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0].rank() < w[1].rank()));
        PrimeSet { n, items }
    }

    pub fn vars(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TernaryString> {
        self.items.iter()
    }

    pub fn contains(&self, s: &TernaryString) -> bool {
        self.items.binary_search_by_key(&s.rank(), |t| t.rank()).is_ok()
    }

    /// Output order: more wildcards first, then increasing rank.
    pub fn output_order(&self) -> Vec<TernaryString> {
        let mut v = self.items.clone();
        // already rank-sorted, so a stable sort on weight is enough
        v.sort_by_key(|s| std::cmp::Reverse(s.weight()));
        v
    }

    /// Strings in `self` but not `other`, and in `other` but not `self`.
    pub fn difference(&self, other: &PrimeSet) -> (Vec<TernaryString>, Vec<TernaryString>) {
        let a: BTreeSet<_> = self.items.iter().map(|s| s.rank()).collect();
        let b: BTreeSet<_> = other.items.iter().map(|s| s.rank()).collect();
        let only_a = self.items.iter().filter(|s| !b.contains(&s.rank())).copied().collect();
        let only_b = other.items.iter().filter(|s| !a.contains(&s.rank())).copied().collect();
        (only_a, only_b)
    }

    /// The covered points are exactly the support of `tt`.
    pub fn covers_exactly(&self, tt: &TruthTable) -> bool {
        if self.n != tt.vars() {
            return false;
        }
        let mut covered = TruthTable::empty(tt.vars()).expect("valid n");
        for s in &self.items {
            let stars = s.star_positions();
            let base = s.one_positions();
            // enumerate subsets of the star positions
            let mut sub = 0u64;
            loop {
                let x = base | sub;
                if !tt.get(x) {
                    return false;
                }
                covered.set(x, true);
                sub = (sub.wrapping_sub(stars)) & stars;
                if sub == 0 {
                    break;
                }
            }
        }
        covered == *tt
    }

    /// No member covers a different member.
    pub fn is_antichain(&self) -> bool {
        // a string can only cover strings of smaller or equal weight
        let mut by_weight: Vec<&TernaryString> = self.items.iter().collect();
        by_weight.sort_by_key(|s| std::cmp::Reverse(s.weight()));
        for (i, a) in by_weight.iter().enumerate() {
            for b in &by_weight[i + 1..] {
                if a.covers_string(b) {
                    return false;
                }
            }
        }
        true
    }
}

impl<'a> IntoIterator for &'a PrimeSet {
    type Item = &'a TernaryString;
    type IntoIter = std::slice::Iter<'a, TernaryString>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}
