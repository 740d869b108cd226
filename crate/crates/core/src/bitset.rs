//! Fixed-width bit-vectors over vertex indices.
//!
//! Facet incidences are stored as bit-vectors ("each set bit representing an
//! incident vertex"), so that common-vertex counts reduce to a word-wise AND
//! followed by a hardware population count.

use std::fmt;

/// A set of indices in `0..len`, stored as 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

/// Number of 64-bit words needed for `len` bits.
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitSet {
    /// The empty set over `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; words_for(len)] }
    }

    /// The set of the given indices.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::new(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    /// The full set `0..len`.
    pub fn full(len: usize) -> Self {
        Self::from_indices(len, 0..len)
    }

    /// Universe size.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} outside universe of size {}", self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of elements.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Size of the intersection, without materializing it.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet { len: self.len, words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        BitSet { len: self.len, words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Indices of set bits in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A dense matrix of bit-vectors with a common width, stored contiguously
/// (row `i` occupies words `i*stride .. (i+1)*stride`).  This is the layout
/// scanned by the adjacency kernel.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    pub rows: usize,
    pub stride: usize,
    pub data: Vec<u64>,
}

impl BitMatrix {
    pub fn from_sets(sets: &[&BitSet], len: usize) -> Self {
        let stride = words_for(len).max(1);
        let mut data = vec![0u64; stride * sets.len()];
        for (i, s) in sets.iter().enumerate() {
            data[i * stride..i * stride + s.words.len()].copy_from_slice(&s.words);
        }
        BitMatrix { rows: sets.len(), stride, data }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// `|row(i) ∧ row(j)|`.
    #[inline]
    pub fn common(&self, i: usize, j: usize) -> u32 {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| (a & b).count_ones()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = BitSet::from_indices(130, [0, 5, 64, 129]);
        let b = BitSet::from_indices(130, [5, 64, 100]);
        assert_eq!(a.count(), 4);
        assert_eq!(a.intersection_count(&b), 2);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(a.union(&b).count(), 5);
        assert!(a.contains(129) && !a.contains(128));
    }
}
