use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of vertex indices backed by a fixed-width bitset.
///
/// The width (`universe`) is the vertex count of the host graph; members are
/// always in `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from indices; panics if an index is outside the universe.
    pub fn from_slice(universe: usize, members: &[usize]) -> Self {
        let mut s = Self::new(universe);
        for &v in members {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_in<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut s = Self::new(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Returns `true` if `v` was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe(), "vertex {v} outside universe {}", self.universe());
        !self.bits.put(v)
    }

    /// Returns `true` if `v` was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe() {
            return false;
        }
        let was = self.bits.contains(v);
        self.bits.set(v, false);
        was
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> VertexSet {
        let mut s = Self::full(self.universe());
        s.difference_with(self);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Deserializes from a plain index list; the universe becomes `max + 1`.
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        let universe = members.iter().max().map_or(0, |m| m + 1);
        Ok(Self::from_slice(universe, &members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = VertexSet::from_slice(8, &[1, 3, 5]);
        let b = VertexSet::from_slice(8, &[3, 4, 5, 6]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5, 6]);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert!(a.insert(7));
        assert!(!a.insert(7));
        assert!(a.remove(7));
        assert!(!a.remove(7));
        assert_eq!(a.complement().len(), 5);
        assert_eq!(a.first(), Some(1));
        assert!(VertexSet::new(4).is_empty());
    }
}
