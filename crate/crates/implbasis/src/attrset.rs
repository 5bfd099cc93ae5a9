//! Fixed-width bit vectors over a ground set of attributes.

use std::cmp::Ordering;
use std::fmt;

/// A subset of the ground set, keyed by attribute index.
///
/// The width is fixed at construction; all binary operations expect both
/// operands to have the same width.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AttrSet {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl AttrSet {
    pub fn empty(n: usize) -> Self {
        AttrSet { n, words: vec![0; word_count(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        let mut s = Self::empty(n);
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Width of the ambient ground set.
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        AttrSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        AttrSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        AttrSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn complement(&self) -> Self {
        Self::full(self.n).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Smallest attribute index in the set.
    pub fn min_elem(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Ascending iterator over the member indices.
    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, word_idx: 0, current: self.words[0] }
    }

    /// The set as a single word; only valid for widths up to 64.
    pub fn as_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        self.words[0]
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        debug_assert!(n == 64 || mask < (1u64 << n));
        let mut words = vec![0; word_count(n)];
        words[0] = mask;
        AttrSet { n, words }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

/// Lexicographic order on the ascending member sequences, shorter prefix first.
/// Used for all deterministic tie-breaking and output ordering.
impl Ord for AttrSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for AttrSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = AttrSet::from_indices(70, [0, 65]);
        let b = AttrSet::from_indices(70, [0, 3]);
        assert_eq!(a.union(&b).len(), 3);
        assert_eq!(a.intersection(&b).len(), 1);
        assert!(a.difference(&b).contains(65));
        assert!(!a.is_subset(&b));
        assert!(b.is_subset(&a.union(&b)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 65]);
    }

    #[test]
    fn lex_order() {
        let n = 8;
        let s = |ix: &[usize]| AttrSet::from_indices(n, ix.iter().copied());
        // {0} < {0,3} (prefix first), {0,2} < {0,3}, {0,3} < {1}
        assert!(s(&[0]) < s(&[0, 3]));
        assert!(s(&[0, 2]) < s(&[0, 3]));
        assert!(s(&[0, 3]) < s(&[1]));
        assert!(s(&[0, 2, 9 % n]) < s(&[0, 3]));
        assert_eq!(s(&[4, 1]), s(&[1, 4]));
    }

    #[test]
    fn complement_and_mask() {
        let a = AttrSet::from_mask(5, 0b10110);
        assert_eq!(a.complement().as_mask(), 0b01001);
        assert_eq!(a.len(), 3);
        assert_eq!(a.min_elem(), Some(1));
    }
}
