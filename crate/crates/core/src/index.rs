//! Sorted index sets and interval sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evaluation indices in ascending order (repeats allowed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet(Vec<u64>);

impl IndexSet {
    pub fn new(indices: Vec<u64>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedIndices);
        }
        Ok(IndexSet(indices))
    }

    /// Sorts the input first.
    pub fn sorted(mut indices: Vec<u64>) -> Self {
        indices.sort_unstable();
        IndexSet(indices)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

/// Inclusive index intervals `[m, n]`, stored sorted by `m`.
///
/// The product attached to `[m, n]` is `A(n) A(n-1) ... A(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet(Vec<(u64, u64)>);

impl IntervalSet {
    /// Validates `m <= n` and sorts by `m`.
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        for &(lo, hi) in &pairs {
            if lo > hi {
                return Err(Error::MalformedInterval { lo, hi });
            }
        }
        let mut sorted = pairs;
        sorted.sort_by_key(|p| p.0);
        Ok(IntervalSet(sorted))
    }

    pub fn as_slice(&self) -> &[(u64, u64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_end(&self) -> Option<u64> {
        self.0.iter().map(|p| p.1).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IndexSet::new(vec![1, 2, 2, 5]).is_ok());
        assert_eq!(IndexSet::new(vec![3, 1]), Err(Error::UnsortedIndices));
        assert_eq!(IntervalSet::new(vec![(4, 2)]), Err(Error::MalformedInterval { lo: 4, hi: 2 }));
        let s = IntervalSet::new(vec![(5, 9), (1, 2)]).unwrap();
        assert_eq!(s.as_slice(), &[(1, 2), (5, 9)]);
    }
}
