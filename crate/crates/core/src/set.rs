//! Compact subsets of a fixed finite universe `{0, …, n-1}`.

use std::fmt;

/// A subset of a finite universe of element ids, stored as a bitset.
///
/// Every operation that combines two sets requires both to live over the
/// same universe; mixing universes is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    universe: u32,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(universe: u32) -> Self {
        let words = vec![0u64; universe.div_ceil(64) as usize];
        ElemSet { universe, words }
    }

    pub fn full(universe: u32) -> Self {
        let mut s = Self::empty(universe);
        for e in 0..universe {
            s.insert(e);
        }
        s
    }

    pub fn singleton(universe: u32, elem: u32) -> Self {
        let mut s = Self::empty(universe);
        s.insert(elem);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(universe: u32, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn universe_size(&self) -> u32 {
        self.universe
    }

    pub fn insert(&mut self, elem: u32) {
        assert!(elem < self.universe, "element {elem} outside universe of size {}", self.universe);
        self.words[(elem / 64) as usize] |= 1 << (elem % 64);
    }

    pub fn contains(&self, elem: u32) -> bool {
        elem < self.universe && self.words[(elem / 64) as usize] & (1 << (elem % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest element, if any.
    pub fn min_elem(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    fn check_same_universe(&self, other: &Self) {
        assert_eq!(self.universe, other.universe, "set operation across different universes");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        ElemSet { universe: self.universe, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        ElemSet { universe: self.universe, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        ElemSet { universe: self.universe, words }
    }

    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let universe = self.universe;
        (0..universe).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
