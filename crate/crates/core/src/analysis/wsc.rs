//! Weak separation: non-touching siblings must be farther apart than a fixed
//! multiple of the parent's free length `|J_σ| - Σ |J_{σ*i}|`.

use std::fmt;

use num_traits::Zero;

use crate::moran::{Level, MoranSet};
use crate::rational::{format_rational, Rational};

/// Supremum of admissible WSC constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WscConstant {
    /// WSC holds for every `η < η₀` and fails at `η₀`.
    Bounded(Rational),
    /// No level has a non-touching sibling pair with positive free length;
    /// the condition holds for every `η₀`.
    Unconstrained,
}

impl WscConstant {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            WscConstant::Bounded(v) => Some(v),
            WscConstant::Unconstrained => None,
        }
    }

    /// The common constant of two sets: the smaller bound.
    pub fn common(&self, other: &WscConstant) -> WscConstant {
        match (self, other) {
            (WscConstant::Bounded(a), WscConstant::Bounded(b)) => WscConstant::Bounded(a.min(b).clone()),
            (WscConstant::Bounded(a), WscConstant::Unconstrained)
            | (WscConstant::Unconstrained, WscConstant::Bounded(a)) => WscConstant::Bounded(a.clone()),
            (WscConstant::Unconstrained, WscConstant::Unconstrained) => WscConstant::Unconstrained,
        }
    }
}

impl fmt::Display for WscConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WscConstant::Bounded(v) => f.write_str(&format_rational(v)),
            WscConstant::Unconstrained => f.write_str("unconstrained"),
        }
    }
}

/// Smallest `dist(J_{σ*i}, J_{σ*j}) / (free length)` over non-intersecting
/// sibling pairs at one level, in units of the parent length. `None` when the
/// level imposes no constraint.
pub fn level_wsc_ratio(level: &Level) -> Option<Rational> {
    let free = level.free_fraction();
    if free.is_zero() {
        // dist > η·0 holds for every pair that does not intersect.
        return None;
    }
    let n = level.offsets.len();
    let mut best: Option<Rational> = None;
    for i in 0..n {
        let right_i = &level.offsets[i] + &level.r;
        for j in i + 1..n {
            let dist = &level.offsets[j] - &right_i;
            if dist > Rational::zero() {
                let ratio = dist / &free;
                best = Some(match best {
                    Some(b) if b <= ratio => b,
                    _ => ratio,
                });
            }
        }
    }
    best
}

/// Exact WSC constant over one preamble-plus-period window of levels.
pub fn wsc_constant(set: &MoranSet) -> WscConstant {
    (1..=set.window_len())
        .filter_map(|k| level_wsc_ratio(set.level(k)))
        .min()
        .map_or(WscConstant::Unconstrained, WscConstant::Bounded)
}
