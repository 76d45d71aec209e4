//! Sets of element indices and partitions of index ranges.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Membership mask over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for g in 0..universe {
            s.insert(g);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for g in indices {
            s.insert(g);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        g < self.universe && self.words[g / 64] >> (g % 64) & 1 == 1
    }

    /// Returns `true` if `g` was not already present.
    #[inline]
    pub fn insert(&mut self, g: usize) -> bool {
        assert!(
            g < self.universe,
            "element {g} outside 0..{}",
            self.universe
        );
        let w = &mut self.words[g / 64];
        let bit = 1u64 << (g % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Lexicographic on the ascending member lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A set partition of `0..n` in canonical form: each part ascending, parts
/// ordered by their least member. Two partitions are equal iff their
/// canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        parts.retain(|p| !p.is_empty());
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Partition { parts }
    }

    /// Groups `0..keys.len()` by equal key.
    pub fn by_key<K: Ord>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut buckets: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for (i, k) in keys.into_iter().enumerate() {
            buckets.entry(k).or_default().push(i);
        }
        Self::new(buckets.into_values().collect())
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True iff the parts are disjoint and cover exactly `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for p in &self.parts {
            for &x in p {
                if x >= n || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every part of `self` lies inside some part of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let mut owner = std::collections::HashMap::new();
        for (i, p) in coarser.parts.iter().enumerate() {
            for &x in p {
                owner.insert(x, i);
            }
        }
        self.parts.iter().all(|p| {
            let first = owner.get(&p[0]);
            first.is_some() && p.iter().all(|x| owner.get(x) == first)
        })
    }

    /// Replaces each index by the block of indices it stands for.
    pub fn expand(&self, blocks: &[Vec<usize>]) -> Partition {
        Partition::new(
            self.parts
                .iter()
                .map(|p| p.iter().flat_map(|&c| blocks[c].iter().copied()).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_basics() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
        let t = ElementSet::from_indices(130, [0, 5]);
        assert_eq!(s.intersection(&t).to_vec(), vec![0]);
        assert_eq!(s.union(&t).to_vec(), vec![0, 5, 129]);
        assert_eq!(s.difference(&t).to_vec(), vec![129]);
        assert!(ElementSet::from_indices(130, [0]).is_subset(&t));
        assert!(!s.is_subset(&t));
    }

    #[test]
    fn lexicographic_order() {
        let a = ElementSet::from_indices(8, [0, 1, 7]);
        let b = ElementSet::from_indices(8, [0, 2]);
        assert!(a < b);
    }

    #[test]
    fn partitions() {
        let p = Partition::by_key([1, 0, 1, 2]);
        assert_eq!(p.parts(), &[vec![0, 2], vec![1], vec![3]]);
        assert!(p.is_partition_of(4));
        assert!(!p.is_partition_of(5));
        let fine = Partition::new(vec![vec![0], vec![2], vec![1], vec![3]]);
        assert!(fine.refines(&p));
        assert!(!p.refines(&fine));
        let expanded = Partition::new(vec![vec![0, 1]]).expand(&[vec![0, 3], vec![1, 2]]);
        assert_eq!(expanded.parts(), &[vec![0, 1, 2, 3]]);
    }
}
