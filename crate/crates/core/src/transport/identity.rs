//! The ratio identity relating `φ` on a component and on a direct offspring.
//!
//! With `U` of rank `k`, a direct offspring `U'` of rank `k+1`, and the image
//! decompositions `f(U ∩ E) = ⋃ J_j` (`J_j ∈ 𝓕_{k+p₀}`) and
//! `f(U' ∩ E) = ⋃ I_j` (`I_j ∈ 𝓕_{k+p₀+1}`):
//!
//! ```text
//! φ(U') / φ(U) = (Σ #I_j / Σ #J_j) · (1 / n_{k+p₀+1}) · (#_k U / #_{k+1} U') · n_{k+1}
//! ```

use num_bigint::BigInt;

use crate::analysis::Component;
use crate::error::Error;
use crate::rational::{format_rational, integer, pow, Rational};

use super::decompose::{image_parts, ComponentIndex, DEFAULT_EXTRA_DEPTH};
use super::phi::phi_of_component;
use super::TransportContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub phi_parent: Rational,
    pub phi_child: Rational,
    /// `φ(U')` evaluated directly.
    pub lhs: Rational,
    /// `[ν(f(U'))/ν(f(U))] · [μ(U)/μ(U')] · φ(U)`.
    pub rhs: Rational,
    /// The same ratio assembled from basic-interval counts.
    pub from_counts: Rational,
    /// `Σ #_{k+p₀+1} I_j`.
    pub child_image_count: usize,
    /// `Σ #_{k+p₀} J_j`.
    pub parent_image_count: usize,
    pub parent_count: usize,
    pub child_count: usize,
    pub n_next: u32,
    pub n_deep: u32,
    /// `Σ #J_j · n_{k+p₀+1} · #_{k+1} U'`.
    pub denominator: BigInt,
    /// `8 β^{2p₀+5}`.
    pub denominator_bound: Rational,
}

impl IdentityReport {
    pub fn within_bound(&self) -> bool {
        Rational::from_integer(self.denominator.clone()) <= self.denominator_bound
    }
}

pub fn ratio_identity_check(
    ctx: &TransportContext,
    parent: &Component,
    child: &Component,
    p0: usize,
) -> Result<IdentityReport, Error> {
    let k = parent.rank;
    let is_offspring = child.rank == k + 1
        && child
            .addresses()
            .all(|a| a.parent().is_some_and(|p| parent.contains_address(&p)));
    if !is_offspring {
        return Err(Error::NotApplicable(format!(
            "component at {} (rank {}) is not a direct offspring of the rank-{k} component at {}",
            child.first_address(),
            child.rank,
            parent.first_address()
        )));
    }
    let target = ctx.map.target();
    let source = ctx.map.source();

    let parent_rec = phi_of_component(ctx, parent);
    let child_rec = phi_of_component(ctx, child);
    let lhs = child_rec.phi.clone();
    let rhs = (&child_rec.nu / &parent_rec.nu) * (&parent_rec.mu / &child_rec.mu) * &parent_rec.phi;

    let fine = ComponentIndex::build(target, k + p0, ctx.budget)?;
    let finer = ComponentIndex::build(target, k + p0 + 1, ctx.budget)?;
    let parent_parts = image_parts(ctx, parent, &fine, DEFAULT_EXTRA_DEPTH)?;
    let child_parts = image_parts(ctx, child, &finer, DEFAULT_EXTRA_DEPTH)?;
    let sum_j = parent_parts.member_total();
    let sum_i = child_parts.member_total();
    let n_deep = target.branching(k + p0 + 1);
    let n_next = source.branching(k + 1);

    let from_counts = Rational::new(BigInt::from(sum_i), BigInt::from(sum_j) * n_deep)
        * Rational::new(BigInt::from(parent.count()) * n_next, BigInt::from(child.count()))
        * &parent_rec.phi;
    let denominator = BigInt::from(sum_j) * n_deep * child.count();
    let denominator_bound = integer(8) * pow(&integer(ctx.beta as u64), 2 * p0 as u32 + 5);

    if lhs != rhs || lhs != from_counts {
        return Err(Error::IdentityViolated {
            lhs: format_rational(&lhs),
            rhs: format!("{} (counts: {})", format_rational(&rhs), format_rational(&from_counts)),
        });
    }
    Ok(IdentityReport {
        phi_parent: parent_rec.phi,
        phi_child: child_rec.phi,
        lhs,
        rhs,
        from_counts,
        child_image_count: sum_i,
        parent_image_count: sum_j,
        parent_count: parent.count(),
        child_count: child.count(),
        n_next,
        n_deep,
        denominator,
        denominator_bound,
    })
}
