//! Strictly increasing multi-indices labelling the basis of the grade-k slice
//! of the exterior algebra over R^n.

use crate::error::{ChainletError, Result};

/// Hard cap on the ambient dimension so that binomial sizes stay desk-scale.
pub const DIM_CAP: usize = 8;

/// Binomial coefficient C(n, k) as usize; small arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A strictly increasing tuple of 1-based axis indices, `e^H = e^{h_1} ∧ ··· ∧ e^{h_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<usize>,
}

impl MultiIndex {
    /// Build from 1-based indices; they must be strictly increasing and within `1..=n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if n > DIM_CAP {
            return Err(ChainletError::DimensionCap { n, cap: DIM_CAP });
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(ChainletError::InvalidInput(format!(
                    "multi-index {:?} is not strictly increasing",
                    indices
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (indices.first(), indices.last()) {
            if first < 1 || last > n {
                return Err(ChainletError::InvalidInput(format!(
                    "multi-index {:?} out of range 1..={}",
                    indices, n
                )));
            }
        }
        Ok(MultiIndex { indices })
    }

    pub fn empty() -> Self {
        MultiIndex { indices: vec![] }
    }

    pub fn full(n: usize) -> Self {
        MultiIndex {
            indices: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// 1-based axis indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.indices.binary_search(&axis).is_ok()
    }

    /// Complement within `1..=n`.
    pub fn complement(&self, n: usize) -> MultiIndex {
        MultiIndex {
            indices: (1..=n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    /// Remove the entry at `pos` (0-based position within the tuple).
    pub fn remove_at(&self, pos: usize) -> MultiIndex {
        let mut indices = self.indices.clone();
        indices.remove(pos);
        MultiIndex { indices }
    }

    /// Position of this multi-index in the lexicographic enumeration of all
    /// k-subsets of `1..=n`; a bijection onto `0..C(n,k)`.
    pub fn rank(&self, n: usize) -> usize {
        let k = self.len();
        let mut rank = 0usize;
        let mut prev = 0usize;
        for (pos, &h) in self.indices.iter().enumerate() {
            for x in prev + 1..h {
                rank += binomial(n - x, k - pos - 1);
            }
            prev = h;
        }
        rank
    }

    /// Inverse of [`MultiIndex::rank`].
    pub fn from_rank(mut rank: usize, n: usize, k: usize) -> MultiIndex {
        let mut indices = Vec::with_capacity(k);
        let mut x = 1usize;
        for pos in 0..k {
            loop {
                let block = binomial(n - x, k - pos - 1);
                if rank < block {
                    indices.push(x);
                    x += 1;
                    break;
                }
                rank -= block;
                x += 1;
            }
        }
        MultiIndex { indices }
    }

    /// Merge with a disjoint multi-index, returning the merge sign
    /// `(-1)^{inversions}` and the sorted union; `None` when they intersect,
    /// since `e^H ∧ e^L = 0` then.
    pub fn merge(&self, other: &MultiIndex) -> Option<(i8, MultiIndex)> {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.indices.len() && j < other.indices.len() {
            if self.indices[i] == other.indices[j] {
                return None;
            }
            if self.indices[i] < other.indices[j] {
                merged.push(self.indices[i]);
                i += 1;
            } else {
                // other[j] jumps over the remaining entries of self
                inversions += self.indices.len() - i;
                merged.push(other.indices[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&self.indices[i..]);
        merged.extend_from_slice(&other.indices[j..]);
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, MultiIndex { indices: merged }))
    }

    /// All multi-indices of length k over `1..=n`, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        (0..binomial(n, k))
            .map(|r| MultiIndex::from_rank(r, n, k))
            .collect()
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices.iter().map(|i| format!("e{}", i)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_is_bijective() {
        for n in 0..=6 {
            for k in 0..=n {
                let all = MultiIndex::all(n, k);
                assert_eq!(all.len(), binomial(n, k));
                for (r, h) in all.iter().enumerate() {
                    assert_eq!(h.rank(n), r);
                    assert_eq!(&MultiIndex::from_rank(r, n, k), h);
                }
            }
        }
    }

    #[test]
    fn dim_of_lambda2_r4_is_6() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(MultiIndex::all(4, 2).len(), 6);
    }

    #[test]
    fn merge_signs() {
        let h = MultiIndex::new(vec![2], 3).unwrap();
        let l = MultiIndex::new(vec![1], 3).unwrap();
        let (sign, merged) = h.merge(&l).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(merged.indices(), &[1, 2]);

        let h = MultiIndex::new(vec![1, 3], 4).unwrap();
        let l = MultiIndex::new(vec![2], 4).unwrap();
        let (sign, merged) = h.merge(&l).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(merged.indices(), &[1, 2, 3]);

        assert!(h.merge(&MultiIndex::new(vec![3], 4).unwrap()).is_none());
    }

    #[test]
    fn strictly_increasing_enforced() {
        assert!(MultiIndex::new(vec![2, 2], 3).is_err());
        assert!(MultiIndex::new(vec![3, 1], 3).is_err());
        assert!(MultiIndex::new(vec![0, 1], 3).is_err());
        assert!(MultiIndex::new(vec![1, 4], 3).is_err());
    }
}
