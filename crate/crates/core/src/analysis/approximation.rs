//! Finite approximations `𝐄_k` and their connected components `𝓔_k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::address::Address;
use crate::error::Error;
use crate::interval::Interval;
use crate::moran::MoranSet;

/// Default cap on the number of intervals produced by one enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicInterval {
    pub address: Address,
    pub interval: Interval,
}

/// The rank-`depth` basic intervals, sorted left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub depth: usize,
    pub intervals: Vec<BasicInterval>,
}

/// A maximal chain of touching rank-`rank` basic intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rank: usize,
    pub span: Interval,
    pub members: Vec<BasicInterval>,
}

impl Component {
    /// `#_k U`.
    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Address of the leftmost member; identifies the component within its rank.
    pub fn first_address(&self) -> &Address {
        &self.members[0].address
    }

    pub fn addresses(&self) -> impl Iterator<Item = &Address> {
        self.members.iter().map(|m| &m.address)
    }

    pub fn contains_address(&self, sigma: &Address) -> bool {
        self.members.binary_search_by(|m| m.address.cmp(sigma)).is_ok()
    }
}

/// `#_k U`, the number of rank-`k` basic intervals in a component.
pub fn count_basic_intervals(component: &Component) -> usize {
    component.count()
}

fn check_budget(requested: &BigInt, budget: u64) -> Result<(), Error> {
    if requested > &BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            requested: requested.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    Ok(())
}

/// All rank-`rank` descendants of `root` in left-to-right order.
pub fn descendants(set: &MoranSet, root: &Address, rank: usize, budget: u64) -> Result<Vec<BasicInterval>, Error> {
    assert!(rank >= root.len(), "descendant rank below the root rank");
    let count = (root.len() + 1..=rank).fold(BigInt::from(1u32), |acc, j| acc * set.branching(j));
    check_budget(&count, budget)?;
    let mut frontier = vec![BasicInterval {
        interval: set.basic_interval(root)?,
        address: root.clone(),
    }];
    for k in root.len()..rank {
        let n = set.branching(k + 1);
        let mut next = Vec::with_capacity(frontier.len() * n as usize);
        for node in &frontier {
            for i in 0..n {
                next.push(BasicInterval {
                    address: node.address.child(i),
                    interval: set.child_interval(&node.interval, k, i),
                });
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

/// Addresses of all rank-`rank` descendants of `root`, in order, without geometry.
pub fn descendant_addresses(set: &MoranSet, root: &Address, rank: usize, budget: u64) -> Result<Vec<Address>, Error> {
    assert!(rank >= root.len(), "descendant rank below the root rank");
    let count = (root.len() + 1..=rank).fold(BigInt::from(1u32), |acc, j| acc * set.branching(j));
    check_budget(&count, budget)?;
    let mut frontier = vec![root.clone()];
    for k in root.len()..rank {
        let n = set.branching(k + 1);
        frontier = frontier.iter().flat_map(|a| (0..n).map(move |i| a.child(i))).collect();
    }
    Ok(frontier)
}

/// `𝐄_k`: every rank-`k` basic interval, sorted by left endpoint.
pub fn approximation(set: &MoranSet, k: usize, budget: u64) -> Result<Approximation, Error> {
    Ok(Approximation {
        depth: k,
        intervals: descendants(set, &Address::root(), k, budget)?,
    })
}

/// Merges a sorted run of rank-`rank` intervals into touching chains.
/// Overlapping interiors are rejected rather than merged.
pub fn merge_touching(rank: usize, intervals: Vec<BasicInterval>) -> Result<Vec<Component>, Error> {
    let mut out: Vec<Component> = Vec::new();
    for bi in intervals {
        if let Some(last) = out.last_mut() {
            let prev = last.members.last().expect("components are nonempty");
            match bi.interval.left.cmp(&prev.interval.right) {
                Ordering::Less => {
                    return Err(Error::OverlappingIntervals {
                        left: prev.address.clone(),
                        right: bi.address,
                    })
                }
                Ordering::Equal => {
                    last.span.right = bi.interval.right.clone();
                    last.members.push(bi);
                    continue;
                }
                Ordering::Greater => {}
            }
        }
        out.push(Component {
            rank,
            span: bi.interval.clone(),
            members: vec![bi],
        });
    }
    Ok(out)
}

/// `𝓔_k`: connected components of the approximation.
pub fn components(approx: &Approximation) -> Result<Vec<Component>, Error> {
    merge_touching(approx.depth, approx.intervals.clone())
}

/// Components one rank deeper that lie inside `component`.
pub fn direct_offsprings(set: &MoranSet, component: &Component) -> Result<Vec<Component>, Error> {
    let k = component.rank;
    let n = set.branching(k + 1);
    let mut children = Vec::with_capacity(component.count() * n as usize);
    for m in &component.members {
        for i in 0..n {
            children.push(BasicInterval {
                address: m.address.child(i),
                interval: set.child_interval(&m.interval, k, i),
            });
        }
    }
    merge_touching(k + 1, children)
}

/// Components of `𝓔_rank` contained in `J_root`, for `rank >= |root|`.
///
/// Chains that continue across the boundary of `J_root` are dropped, so each
/// returned value is a genuine component of the global approximation.
pub fn components_within(set: &MoranSet, root: &Address, rank: usize, budget: u64) -> Result<Vec<Component>, Error> {
    let inside = descendants(set, root, rank, budget)?;
    let left_outside = neighbor(set, root, rank, Side::Left)?;
    let right_outside = neighbor(set, root, rank, Side::Right)?;
    let mut comps = merge_touching(rank, inside)?;
    if let (Some(out), Some(first)) = (&left_outside, comps.first()) {
        if out.right == first.span.left {
            comps.remove(0);
        }
    }
    if let (Some(out), Some(last)) = (&right_outside, comps.last()) {
        if out.left == last.span.right {
            comps.pop();
        }
    }
    Ok(comps)
}

enum Side {
    Left,
    Right,
}

/// The rank-`rank` interval immediately outside `J_root` on the given side.
fn neighbor(set: &MoranSet, root: &Address, rank: usize, side: Side) -> Result<Option<Interval>, Error> {
    let digits = root.digits();
    // Walk up to the deepest position where a sibling step is possible.
    for pos in (0..digits.len()).rev() {
        let n = set.branching(pos + 1);
        let d = digits[pos];
        let step = match side {
            Side::Left if d > 0 => d - 1,
            Side::Right if d + 1 < n => d + 1,
            _ => continue,
        };
        let mut addr = digits[..pos].to_vec();
        addr.push(step);
        // Extend toward the root's side down to `rank`.
        for j in pos + 1..rank {
            let n_j = set.branching(j + 1);
            addr.push(match side {
                Side::Left => n_j - 1,
                Side::Right => 0,
            });
        }
        return set.basic_interval(&Address::new(addr)).map(Some);
    }
    Ok(None)
}

/// Sum of member counts, `n_1 ⋯ n_k` for a full approximation.
pub fn total_members(components: &[Component]) -> usize {
    components.iter().map(Component::count).sum()
}

/// Gaps between consecutive components; empty for a single component.
pub fn component_gaps(components: &[Component]) -> Vec<crate::rational::Rational> {
    components
        .windows(2)
        .map(|w| &w[1].span.left - &w[0].span.right)
        .collect()
}
