//! δ-connectivity of finite unions of intervals.

use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaConnectivity {
    /// Every gap is at most δ. `chain` lists interval endpoints from the
    /// leftmost point to the rightmost; consecutive entries are within δ or
    /// span a single interval, which can be walked in steps of δ.
    Connected { chain: Vec<Rational> },
    /// First gap `(right end, next left end)` wider than δ.
    Disconnected { gap: (Rational, Rational) },
}

impl DeltaConnectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, DeltaConnectivity::Connected { .. })
    }
}

/// Tests whether a sorted union of intervals with disjoint interiors is
/// δ-connected.
pub fn is_delta_connected(intervals: &[Interval], delta: &Rational) -> DeltaConnectivity {
    let mut chain = Vec::with_capacity(intervals.len() * 2);
    for (i, iv) in intervals.iter().enumerate() {
        if i > 0 {
            let prev = &intervals[i - 1];
            if &(&iv.left - &prev.right) > delta {
                return DeltaConnectivity::Disconnected {
                    gap: (prev.right.clone(), iv.left.clone()),
                };
            }
        }
        chain.push(iv.left.clone());
        chain.push(iv.right.clone());
    }
    chain.dedup();
    DeltaConnectivity::Connected { chain }
}

/// Largest gap between consecutive intervals, zero for fewer than two.
pub fn max_gap(intervals: &[Interval]) -> Rational {
    intervals
        .windows(2)
        .map(|w| &w[1].left - &w[0].right)
        .max()
        .unwrap_or_default()
}
