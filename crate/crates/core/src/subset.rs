use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest vertex count a [`VertexSet`] can index.
pub const MAX_VERTICES: usize = 32;

/// A subset of the vertices `0..n`, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES);
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> VertexSet {
        VertexSet(it.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(VertexSet::full(n).0 & !self.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_VERTICES).filter(move |&v| bits >> v & 1 == 1)
    }

    /// Mask index for table lookups.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// `n` characters, the i-th being `1` when vertex i is present.
    pub fn bitstring(self, n: usize) -> String {
        (0..n).map(|v| if self.contains(v) { '1' } else { '0' }).collect()
    }

    /// All subsets of `0..n`, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = VertexSet> {
        (0..1u64 << n).map(|m| VertexSet(m as u32))
    }

    /// All subsets of `self`, in mask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(VertexSet(cur))
        })
    }

    /// Subsets of `0..n` of cardinality `k`, in mask order.
    pub fn of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
        VertexSet::all(n).filter(move |s| s.len() == k)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_everything_once() {
        let s = VertexSet::from_indices([0, 2, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_and_bits() {
        let s = VertexSet::from_indices([0, 2]);
        assert_eq!(s.complement(4), VertexSet::from_indices([1, 3]));
        assert_eq!(s.bitstring(4), "1010");
        assert_eq!(VertexSet::of_size(4, 2).count(), 6);
    }
}
