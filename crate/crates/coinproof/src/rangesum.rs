//! Constructive subset sums over contiguous integer ranges [lo..hi].
//!
//! Size-k subsets of a range reach exactly the sums in
//! [k*lo + T_{k-1}, k*hi - T_{k-1}], and walking one element up at a time
//! reaches every value in between. Feasibility is decided exactly per
//! cardinality (union of those intervals), not merely under the sufficient
//! conditions the builders rely on.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::numbers::triangular;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RangeSumError {
    #[error("range bounds must satisfy 1 <= lo <= hi (got {lo}..{hi})")]
    InvalidBounds { lo: u64, hi: u64 },
    #[error("subset cardinality {k} outside 0..={len}")]
    InvalidCardinality { k: u64, len: u64 },
}

/// A contiguous range of positive integers, or the explicitly empty range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange(Option<(u64, u64)>);

impl IntRange {
    /// A non-empty range; requires 1 <= lo <= hi.
    pub fn new(lo: u64, hi: u64) -> Result<Self, RangeSumError> {
        if lo >= 1 && lo <= hi {
            Ok(Self(Some((lo, hi))))
        } else {
            Err(RangeSumError::InvalidBounds { lo, hi })
        }
    }

    pub const fn empty() -> Self {
        Self(None)
    }

    /// [lo..hi], empty when lo > hi. Panics if a non-empty span starts at 0.
    pub fn span(lo: u64, hi: u64) -> Self {
        if lo > hi {
            Self::empty()
        } else {
            assert!(lo >= 1, "range elements must be positive");
            Self(Some((lo, hi)))
        }
    }

    pub fn bounds(&self) -> Option<(u64, u64)> {
        self.0
    }

    pub fn len(&self) -> u64 {
        match self.0 {
            Some((lo, hi)) => hi - lo + 1,
            None => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn contains(&self, v: u64) -> bool {
        matches!(self.0, Some((lo, hi)) if lo <= v && v <= hi)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        let (lo, hi) = self.0.map_or((1, 0), |b| b);
        lo..=hi
    }

    /// Sum of every element in the range.
    pub fn total(&self) -> u64 {
        match self.0 {
            Some((lo, hi)) => triangular(hi) - triangular(lo - 1),
            None => 0,
        }
    }
}

/// Minimum and maximum sums over size-k subsets of the range: the k smallest
/// elements give k*lo + T_{k-1}, the k largest give k*hi - T_{k-1}, and every
/// integer in between is achievable by some size-k subset.
pub fn k_subset_sum_bounds(range: IntRange, k: u64) -> Result<(u64, u64), RangeSumError> {
    let len = range.len();
    if k > len {
        return Err(RangeSumError::InvalidCardinality { k, len });
    }
    if k == 0 {
        return Ok((0, 0));
    }
    let (lo, hi) = range.bounds().expect("k >= 1 implies non-empty");
    Ok((k * lo + triangular(k - 1), k * hi - triangular(k - 1)))
}

/// A subset of the range summing exactly to `target`, whenever one exists.
///
/// Picks the smallest feasible cardinality k, starts from the k smallest
/// elements, and raises elements from the top down until the deficit is
/// absorbed; each raise keeps the elements strictly increasing.
pub fn subset_with_sum(range: IntRange, target: u64) -> Option<BTreeSet<u64>> {
    if target == 0 {
        return Some(BTreeSet::new());
    }
    let (lo, hi) = range.bounds()?;
    for k in 1..=range.len() {
        let (min, max) = k_subset_sum_bounds(range, k).expect("k <= len");
        if target < min {
            // minima grow with k, so no larger cardinality can reach target
            return None;
        }
        if target > max {
            continue;
        }
        let mut picked: Vec<u64> = (lo..lo + k).collect();
        let mut deficit = target - min;
        for slot in (0..picked.len()).rev() {
            if deficit == 0 {
                break;
            }
            let ceiling = hi - (k - 1 - slot as u64);
            let raise = deficit.min(ceiling - picked[slot]);
            picked[slot] += raise;
            deficit -= raise;
        }
        debug_assert_eq!(deficit, 0);
        return Some(picked.into_iter().collect());
    }
    None
}

/// The exact set of achievable subset sums, as maximal disjoint closed
/// intervals in ascending order.
pub fn achievable_sums(range: IntRange) -> Vec<(u64, u64)> {
    let mut intervals = vec![(0u64, 0u64)];
    for k in 1..=range.len() {
        let (min, max) = k_subset_sum_bounds(range, k).expect("k <= len");
        let last = intervals.last_mut().expect("seeded with the empty-subset interval");
        if min <= last.1 + 1 {
            last.1 = last.1.max(max);
        } else {
            intervals.push((min, max));
        }
    }
    intervals
}
