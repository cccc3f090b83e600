//! Placement of children inside a parent interval.
//!
//! Homogeneity fixes every child's length ratio `r_k` but not its position;
//! a [`LayoutRule`] supplies the left offsets, as fractions of the parent
//! length, for each level.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::periodic::EventuallyPeriodic;
use crate::rational::{format_rational, integer, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum LayoutRule {
    /// First child at 0, last child flush right, equal gaps between.
    #[default]
    EndsAnchored,
    /// Children touch, packed against the left end.
    LeftPacked,
    /// Children touch, packed against the right end.
    RightPacked,
    /// Per-level offsets, eventually periodic in the level index.
    Explicit(EventuallyPeriodic<Vec<Rational>>),
}

impl LayoutRule {
    pub fn kind(&self) -> &'static str {
        match self {
            LayoutRule::EndsAnchored => "ends_anchored",
            LayoutRule::LeftPacked => "left_packed",
            LayoutRule::RightPacked => "right_packed",
            LayoutRule::Explicit(_) => "explicit",
        }
    }

    /// Left offsets of the `n` children at level `k`, each of relative length `r`.
    pub fn offsets(&self, k: usize, n: u32, r: &Rational) -> Vec<Rational> {
        match self {
            LayoutRule::EndsAnchored => {
                let gap = (Rational::one() - integer(n as u64) * r) / integer(n as u64 - 1);
                let step = r + gap;
                (0..n).map(|i| integer(i as u64) * &step).collect()
            }
            LayoutRule::LeftPacked => (0..n).map(|i| integer(i as u64) * r).collect(),
            LayoutRule::RightPacked => (0..n).map(|i| Rational::one() - integer((n - i) as u64) * r).collect(),
            LayoutRule::Explicit(levels) => levels.get(k).clone(),
        }
    }

    pub(crate) fn preamble_len(&self) -> usize {
        match self {
            LayoutRule::Explicit(levels) => levels.preamble_len(),
            _ => 0,
        }
    }

    pub(crate) fn period_len(&self) -> usize {
        match self {
            LayoutRule::Explicit(levels) => levels.period_len(),
            _ => 1,
        }
    }
}

/// Checks that `offsets` place `n` children of relative length `r` inside
/// the parent with disjoint interiors.
pub fn check_offsets(level: usize, n: u32, r: &Rational, offsets: &[Rational]) -> Result<(), Error> {
    let fail = |reason: String| Err(Error::InvalidLayout { level, reason });
    if offsets.len() != n as usize {
        return fail(format!("{} offsets given for n = {n} children", offsets.len()));
    }
    if offsets[0] < Rational::zero() {
        return fail(format!("first offset {} is negative", format_rational(&offsets[0])));
    }
    for (i, pair) in offsets.windows(2).enumerate() {
        if &pair[0] + r > pair[1] {
            return fail(format!(
                "children {i} and {} overlap (offsets {} and {}, length {})",
                i + 1,
                format_rational(&pair[0]),
                format_rational(&pair[1]),
                format_rational(r)
            ));
        }
    }
    let last = offsets.last().expect("n >= 2");
    if last + r > Rational::one() {
        return fail(format!("last child ends at {} > 1", format_rational(&(last + r))));
    }
    Ok(())
}
