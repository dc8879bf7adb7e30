//! Vertex sets as multi-word bitsets.
//!
//! A `VertexSet` is a subset of `0..n`; all operations that combine two sets
//! require equal `n`. Rows of a graph's adjacency structure are `VertexSet`s.

/// Subset of the vertices `0..n`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    (n + 63) / 64
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        let mut s = VertexSet::new(n);
        for v in iter {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n, "vertex {} out of range {}", v, self.n);
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Lowest set bit, if any.
    pub fn min(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_word_ops() {
        let mut s = VertexSet::new(200);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(199);
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 199]);
        assert!(s.contains(64));
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.min(), Some(0));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_iter(10, [1, 2, 3]);
        let b = VertexSet::from_iter(10, [3, 4]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 2]);
        assert!(!a.is_disjoint(&b));
        assert!(VertexSet::from_iter(10, [3]).is_subset(&b));
    }
}
