//! Decomposition of `f(I ∩ E)` into components of `𝓕_{k+p₀}` lying inside a
//! single component of `𝓕_{k-p₀}`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::address::Address;
use crate::analysis::{approximation, components, descendant_addresses, Component};
use crate::error::Error;
use crate::moran::MoranSet;
use crate::rational::{integer, pow, Rational};

use super::TransportContext;

/// Resolution below `k + p₀` at which images are compared.
pub const DEFAULT_EXTRA_DEPTH: usize = 2;

/// The components of one approximation rank with a member lookup.
#[derive(Clone, Debug)]
pub struct ComponentIndex {
    pub rank: usize,
    pub components: Vec<Component>,
    owner: HashMap<Address, usize>,
}

impl ComponentIndex {
    pub fn build(set: &MoranSet, rank: usize, budget: u64) -> Result<Self, Error> {
        let components = components(&approximation(set, rank, budget)?)?;
        let owner = components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.addresses().map(move |a| (a.clone(), i)))
            .collect();
        Ok(ComponentIndex {
            rank,
            components,
            owner,
        })
    }

    /// Index of the component whose member is the rank-`self.rank` prefix of `word`.
    pub fn owner_of(&self, word: &Address) -> Option<usize> {
        if word.len() < self.rank {
            return None;
        }
        self.owner.get(&word.prefix(self.rank)).copied()
    }
}

/// The parts `{J_j} ⊆ 𝓕_{rank}` whose union is the image, after checking
/// that every component of that rank is either inside the image or disjoint
/// from it.
#[derive(Clone, Debug)]
pub struct ImageParts {
    pub parts: Vec<Component>,
    /// Rank at which images were resolved.
    pub resolution: usize,
    /// Number of rank-`resolution` F-cylinders in the image.
    pub image_cells: usize,
}

impl ImageParts {
    /// `Σ_j #J_j`, basic intervals of the parts' rank.
    pub fn member_total(&self) -> usize {
        self.parts.iter().map(Component::count).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rank: usize,
    pub p0: usize,
    /// `J* ∈ 𝓕_{k-p₀}`.
    pub ancestor: Component,
    /// `{J_j} ⊆ 𝓕_{k+p₀}`.
    pub parts: Vec<Component>,
    pub resolution: usize,
    /// `2 β^{2p₀+1}`.
    pub part_bound: Rational,
}

impl Decomposition {
    pub fn h(&self) -> usize {
        self.parts.len()
    }

    pub fn within_part_bound(&self) -> bool {
        integer(self.h() as u64) <= self.part_bound
    }
}

fn image_cells(
    ctx: &TransportContext,
    component: &Component,
    resolution_floor: usize,
) -> Result<(HashSet<Address>, usize), Error> {
    let images: Vec<Address> = component
        .addresses()
        .flat_map(|s| ctx.map.image_of_cylinder(s))
        .collect();
    let resolution = images.iter().map(Address::len).max().unwrap_or(0).max(resolution_floor);
    let mut cells = HashSet::new();
    for tau in &images {
        cells.extend(descendant_addresses(ctx.map.target(), tau, resolution, ctx.budget)?);
    }
    Ok((cells, resolution))
}

fn cells_below(set: &MoranSet, from: usize, to: usize) -> BigInt {
    (from + 1..=to).fold(BigInt::one(), |acc, j| acc * set.branching(j))
}

/// Splits `f(U ∩ E)` over the components in `fine` after verifying the
/// inside-or-disjoint dichotomy for every one of them.
pub fn image_parts(
    ctx: &TransportContext,
    component: &Component,
    fine: &ComponentIndex,
    extra_depth: usize,
) -> Result<ImageParts, Error> {
    let (cells, resolution) = image_cells(ctx, component, fine.rank + extra_depth)?;
    let mut hits = vec![0usize; fine.components.len()];
    for cell in &cells {
        let owner = fine.owner_of(cell).expect("every cell lies in some component");
        hits[owner] += 1;
    }
    let per_member = cells_below(ctx.map.target(), fine.rank, resolution);
    let mut parts = Vec::new();
    for (i, &hit) in hits.iter().enumerate() {
        if hit == 0 {
            continue;
        }
        let comp = &fine.components[i];
        let full = &per_member * comp.count();
        if BigInt::from(hit) != full {
            return Err(Error::DecompositionFails {
                component: component.first_address().clone(),
                detail: format!(
                    "rank-{} component at {} meets the image in {hit} of {full} rank-{resolution} cylinders",
                    fine.rank, comp.span
                ),
            });
        }
        parts.push(comp.clone());
    }
    Ok(ImageParts {
        parts,
        resolution,
        image_cells: cells.len(),
    })
}

/// Decomposes the image of a rank-`k` component, `k >= p₀`, using
/// [`DEFAULT_EXTRA_DEPTH`].
pub fn decompose_image(ctx: &TransportContext, component: &Component, p0: usize) -> Result<Decomposition, Error> {
    let k = component.rank;
    if k < p0 {
        return Err(Error::NotApplicable(format!("rank {k} is below p0 = {p0}")));
    }
    let fine = ComponentIndex::build(ctx.map.target(), k + p0, ctx.budget)?;
    let coarse = ComponentIndex::build(ctx.map.target(), k - p0, ctx.budget)?;
    decompose_image_at(ctx, component, p0, &fine, &coarse, DEFAULT_EXTRA_DEPTH)
}

/// As [`decompose_image`] with prebuilt target indexes at ranks `k + p₀`
/// and `k - p₀`.
pub fn decompose_image_at(
    ctx: &TransportContext,
    component: &Component,
    p0: usize,
    fine: &ComponentIndex,
    coarse: &ComponentIndex,
    extra_depth: usize,
) -> Result<Decomposition, Error> {
    let k = component.rank;
    assert_eq!(fine.rank, k + p0, "fine index rank");
    assert_eq!(coarse.rank + p0, k, "coarse index rank");
    let split = image_parts(ctx, component, fine, extra_depth)?;
    let (first, stray) = {
        let mut owners = split
            .parts
            .iter()
            .flat_map(|p| p.addresses())
            .map(|a| coarse.owner_of(a).expect("covered"));
        let first = owners.next().expect("images are nonempty");
        (first, owners.find(|&o| o != first))
    };
    if let Some(other) = stray {
        return Err(Error::DecompositionFails {
            component: component.first_address().clone(),
            detail: format!(
                "image meets rank-{} components {} and {}",
                coarse.rank, coarse.components[first].span, coarse.components[other].span
            ),
        });
    }
    let ancestor = coarse.components[first].clone();
    debug_assert!(split.parts.iter().all(|p| ancestor.span.contains(&p.span)));
    let part_bound = integer(2) * pow(&integer(ctx.beta as u64), 2 * p0 as u32 + 1);
    Ok(Decomposition {
        rank: k,
        p0,
        ancestor,
        parts: split.parts,
        resolution: split.resolution,
        part_bound,
    })
}
