//! `φ(U) = ν(f(U ∩ E)) / μ(U)` and its maximum over a subtree.

use std::cmp::Ordering;

use crate::address::Address;
use crate::analysis::{components_within, Component};
use crate::error::Error;
use crate::rational::Rational;

use super::pushforward::pushforward_cylinder_mass;
use super::TransportContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRecord {
    /// Cylinder address, or the first member address of a component.
    pub id: Address,
    pub mu: Rational,
    pub nu: Rational,
    pub phi: Rational,
}

pub fn phi_of_cylinder(ctx: &TransportContext, sigma: &Address) -> RatioRecord {
    let mu = ctx.map.source().cylinder_measure(sigma);
    let nu = pushforward_cylinder_mass(ctx, sigma);
    RatioRecord {
        id: sigma.clone(),
        phi: &nu / &mu,
        mu,
        nu,
    }
}

pub fn phi_of_component(ctx: &TransportContext, component: &Component) -> RatioRecord {
    let mut mu = Rational::default();
    let mut nu = Rational::default();
    for sigma in component.addresses() {
        mu += ctx.map.source().cylinder_measure(sigma);
        nu += pushforward_cylinder_mass(ctx, sigma);
    }
    RatioRecord {
        id: component.first_address().clone(),
        phi: &nu / &mu,
        mu,
        nu,
    }
}

#[derive(Clone, Debug)]
pub struct ChiReport {
    pub chi: Rational,
    pub witness: Component,
    pub depth: usize,
    pub components_seen: usize,
}

/// Maximum of `φ` over components of rank `|root|..=depth` inside `J_root`.
/// Ties go to the lowest rank, then the leftmost span.
pub fn chi_over_depth(ctx: &TransportContext, root: &Address, depth: usize) -> Result<ChiReport, Error> {
    if depth < root.len() {
        return Err(Error::NotApplicable(format!(
            "depth {depth} is above the root rank {}",
            root.len()
        )));
    }
    let mut best: Option<(Rational, Component)> = None;
    let mut seen = 0;
    for rank in root.len()..=depth {
        for comp in components_within(ctx.map.source(), root, rank, ctx.budget)? {
            seen += 1;
            let phi = phi_of_component(ctx, &comp).phi;
            let better = match &best {
                None => true,
                Some((b, w)) => match phi.cmp(b) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => (comp.rank, &comp.span.left) < (w.rank, &w.span.left),
                },
            };
            if better {
                best = Some((phi, comp));
            }
        }
    }
    let (chi, witness) =
        best.ok_or_else(|| Error::NotApplicable(format!("no component lies inside J_{root} up to rank {depth}")))?;
    Ok(ChiReport {
        chi,
        witness,
        depth,
        components_seen: seen,
    })
}
