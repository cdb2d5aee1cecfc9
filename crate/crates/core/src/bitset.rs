//! Fixed-width vertex sets packed into 64-bit words.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A subset of `0..n`.
///
/// Ordering compares the sets as binary integers (bit `i` has weight `2^i`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Builds a set from a bitmask over the first 64 vertices.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = Self::empty(n);
        if let Some(w) = s.words.first_mut() {
            *w = if n >= WORD {
                mask
            } else {
                mask & ((1u64 << n) - 1)
            };
        }
        s
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        Self { n, words }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.n,
            "vertex {v} out of range for {} vertices",
            self.n
        );
        self.words[v / WORD] |= 1u64 << (v % WORD);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self { n: self.n, words }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }
}

/// `|a & b|` over packed words.
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .iter()
            .rev()
            .cmp(other.words.iter().rev())
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_len() {
        let s = VertexSet::from_vertices(130, [0, 5, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 64, 129]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64) && !s.contains(63) && !s.contains(500));
    }

    #[test]
    fn integer_ordering() {
        let a = VertexSet::from_vertices(70, [65]);
        let b = VertexSet::from_vertices(70, [0, 1, 2, 3]);
        assert!(b < a);
        assert!(VertexSet::from_mask(8, 3) < VertexSet::from_mask(8, 4));
    }
}
