use alloc::vec::Vec;

use super::BitVector;

/// A set of column (qubit) indices, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Region {
    indices: Vec<usize>,
}

impl Region {
    pub fn empty() -> Self {
        Region::default()
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Region { indices: v }
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        Region {
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Complement within a universe of `n` indices.
    ///
    /// # Panics
    /// Panics if the region contains an index `>= n`.
    pub fn complement(&self, n: usize) -> Region {
        if let Some(&max) = self.indices.last() {
            assert!(max < n, "region index {max} outside universe of size {n}");
        }
        let mut out = Vec::with_capacity(n - self.indices.len());
        let mut it = self.indices.iter().peekable();
        for i in 0..n {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        Region { indices: out }
    }

    pub fn union(&self, other: &Region) -> Region {
        Region::from_indices(self.iter().chain(other.iter()))
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region::from_indices(self.iter().filter(|i| other.contains(*i)))
    }

    pub fn minus(&self, other: &Region) -> Region {
        Region::from_indices(self.iter().filter(|i| !other.contains(*i)))
    }

    pub fn with(&self, i: usize) -> Region {
        Region::from_indices(self.iter().chain(core::iter::once(i)))
    }

    pub fn without(&self, i: usize) -> Region {
        Region::from_indices(self.iter().filter(|&j| j != i))
    }

    /// Number of elements in exactly one of the two regions.
    pub fn symmetric_difference_len(&self, other: &Region) -> usize {
        self.minus(other).len() + other.minus(self).len()
    }

    /// Indicator vector of length `n`.
    pub fn indicator(&self, n: usize) -> BitVector {
        BitVector::from_indices(n, &self.indices)
    }
}

impl FromIterator<usize> for Region {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Region::from_indices(iter)
    }
}
