//! Finite complete prefix codes ("sections") of a symbolic tree.

use std::collections::HashSet;

use num_traits::One;

use crate::address::Address;
use crate::moran::MoranSet;
use crate::rational::Rational;

use super::{MapViolation, Side};

/// A finite set of addresses whose cylinders partition the Moran set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub addresses: Vec<Address>,
}

impl Section {
    pub fn new(addresses: Vec<Address>) -> Self {
        Section { addresses }
    }

    /// Longest element, the depth below which every cylinder lies in one piece.
    pub fn depth(&self) -> usize {
        self.addresses.iter().map(Address::len).max().unwrap_or(0)
    }

    pub fn total_measure(&self, set: &MoranSet) -> Rational {
        self.addresses.iter().map(|a| set.cylinder_measure(a)).sum()
    }

    /// Violations of the complete-prefix-code property on `set`.
    pub fn violations(&self, set: &MoranSet, side: Side) -> Vec<MapViolation> {
        let mut out = Vec::new();
        for a in &self.addresses {
            if let Err(e) = set.check_address(a) {
                out.push(MapViolation::InvalidAddress {
                    side,
                    address: a.clone(),
                    reason: e.to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut seen = HashSet::new();
        for a in &self.addresses {
            if !seen.insert(a) {
                out.push(MapViolation::NotBijective {
                    side,
                    address: a.clone(),
                });
            }
        }
        let mut sorted: Vec<&Address> = seen.into_iter().collect();
        sorted.sort();
        // In prefix-first order a prefix relation shows up between neighbours
        // or within a run that starts at the shorter word.
        for (i, a) in sorted.iter().enumerate() {
            for b in &sorted[i + 1..] {
                if !a.is_prefix_of(b) {
                    break;
                }
                out.push(MapViolation::PrefixOverlap {
                    side,
                    prefix: (*a).clone(),
                    extension: (*b).clone(),
                });
            }
        }
        if out.is_empty() {
            let total = self.total_measure(set);
            if total != Rational::one() {
                out.push(MapViolation::IncompleteSection { side, measure: total });
            }
        }
        out
    }
}
