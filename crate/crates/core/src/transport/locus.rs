//! Search for a sub-cylinder on which `φ` is constant.

use crate::address::Address;
use crate::analysis::descendant_addresses;
use crate::error::Error;
use crate::rational::Rational;

use super::phi::phi_of_cylinder;
use super::TransportContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub address: Address,
    /// `ν(f(E_{στ})) / μ(E_{στ})`.
    pub ratio: Rational,
    /// Levels below the locus on which constancy was verified.
    pub certified_depth: usize,
    pub candidates_tried: usize,
}

/// `true` when every sub-cylinder down to `certify_depth` levels below
/// `sigma` has ratio `phi`.
fn certify(ctx: &TransportContext, sigma: &Address, phi: &Rational, certify_depth: usize) -> Result<bool, Error> {
    for extra in 1..=certify_depth {
        let below = descendant_addresses(ctx.map.source(), sigma, sigma.len() + extra, ctx.budget)?;
        if below.iter().any(|b| &phi_of_cylinder(ctx, b).phi != phi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Visits `στ` for `|τ| <= max_depth` in lexicographic (prefix-first) order
/// and returns the first one certified constant for `certify_depth` levels.
pub fn find_preserving_cylinder(
    ctx: &TransportContext,
    sigma: &Address,
    max_depth: usize,
    certify_depth: usize,
) -> Result<Locus, Error> {
    ctx.map.source().check_address(sigma)?;
    let limit = sigma.len() + max_depth;
    let mut stack = vec![sigma.clone()];
    let mut tried = 0usize;
    while let Some(candidate) = stack.pop() {
        tried += 1;
        if tried as u64 > ctx.budget {
            return Err(Error::BudgetExceeded {
                requested: tried as u128,
                budget: ctx.budget,
            });
        }
        let phi = phi_of_cylinder(ctx, &candidate).phi;
        if certify(ctx, &candidate, &phi, certify_depth)? {
            return Ok(Locus {
                address: candidate,
                ratio: phi,
                certified_depth: certify_depth,
                candidates_tried: tried,
            });
        }
        if candidate.len() < limit {
            let n = ctx.map.source().branching(candidate.len() + 1);
            stack.extend((0..n).rev().map(|i| candidate.child(i)));
        }
    }
    Err(Error::NotFoundWithinDepth {
        cylinder: sigma.clone(),
        max_depth,
    })
}
