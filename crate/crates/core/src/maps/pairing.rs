use std::collections::HashMap;

use crate::address::Address;
use crate::error::Error;
use crate::interval::Interval;
use crate::moran::MoranSet;
use crate::rational::Rational;

use super::{MapViolation, Section, Side};

/// `f: E → F` sending `E_{σ_i * ω}` to `F_{τ_i * ω}`.
#[derive(Clone, Debug)]
pub struct SectionPairingMap {
    source: MoranSet,
    target: MoranSet,
    pairs: Vec<(Address, Address)>,
    source_index: HashMap<Address, usize>,
    target_index: HashMap<Address, usize>,
}

/// Checks sections, bijectivity, level compatibility and layout realizability.
pub fn validate_map(
    source: &MoranSet,
    target: &MoranSet,
    pairs: &[(Address, Address)],
) -> Result<(), Vec<MapViolation>> {
    let sources = Section::new(pairs.iter().map(|p| p.0.clone()).collect());
    let targets = Section::new(pairs.iter().map(|p| p.1.clone()).collect());
    let mut out = sources.violations(source, Side::Source);
    out.extend(targets.violations(target, Side::Target));
    if !out.is_empty() {
        return Err(out);
    }
    for (sigma, tau) in pairs {
        if let Some(v) = continuation_mismatch(source, target, sigma, tau) {
            out.push(v);
        }
    }
    if out.is_empty() {
        out.extend(boundary_conflicts(source, target, pairs, Side::Source));
        out.extend(boundary_conflicts(source, target, pairs, Side::Target));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Compares the subtree levels below `σ` in `E` and below `τ` in `F` over a
/// window long enough to cover both preambles and the joint period.
fn continuation_mismatch(source: &MoranSet, target: &MoranSet, sigma: &Address, tau: &Address) -> Option<MapViolation> {
    let reach = source
        .window_preamble()
        .saturating_sub(sigma.len())
        .max(target.window_preamble().saturating_sub(tau.len()));
    let span = reach + num_integer::lcm(source.window_period(), target.window_period());
    for j in 1..=span {
        let a = source.level(sigma.len() + j);
        let b = target.level(tau.len() + j);
        if a.n != b.n {
            return Some(MapViolation::LevelMismatch {
                source: sigma.clone(),
                target: tau.clone(),
                offset: j,
                n_source: a.n,
                n_target: b.n,
            });
        }
        if a.r != b.r || a.offsets != b.offsets {
            return Some(MapViolation::LayoutMismatch {
                source: sigma.clone(),
                target: tau.clone(),
                note: format!("subtree geometry differs {j} levels below the pair"),
            });
        }
    }
    None
}

/// Adjacent pieces whose cylinders share a point must send it to one place.
fn boundary_conflicts(
    source: &MoranSet,
    target: &MoranSet,
    pairs: &[(Address, Address)],
    side: Side,
) -> Vec<MapViolation> {
    let (here, there) = match side {
        Side::Source => (source, target),
        Side::Target => (target, source),
    };
    let pick = |p: &(Address, Address)| match side {
        Side::Source => (p.0.clone(), p.1.clone()),
        Side::Target => (p.1.clone(), p.0.clone()),
    };
    let mut hulls: Vec<(Interval, Interval, Address, Address)> = pairs
        .iter()
        .map(|p| {
            let (a, b) = pick(p);
            (
                here.cylinder_hull(&a).expect("validated"),
                there.cylinder_hull(&b).expect("validated"),
                a,
                b,
            )
        })
        .collect();
    hulls.sort_by(|x, y| x.0.left.cmp(&y.0.left));
    let mut out = Vec::new();
    for w in hulls.windows(2) {
        let (left, right) = (&w[0], &w[1]);
        // the shared point is max of the left piece and min of the right piece
        if left.0.right == right.0.left && left.1.right != right.1.left {
            let (s, t) = match side {
                Side::Source => (right.2.clone(), right.3.clone()),
                Side::Target => (right.3.clone(), right.2.clone()),
            };
            out.push(MapViolation::LayoutMismatch {
                source: s,
                target: t,
                note: format!(
                    "{side} cylinders {} and {} touch; the shared point would have two images",
                    left.2, right.2
                ),
            });
        }
    }
    out
}

impl SectionPairingMap {
    pub fn new(source: MoranSet, target: MoranSet, pairs: Vec<(Address, Address)>) -> Result<Self, Error> {
        validate_map(&source, &target, &pairs).map_err(Error::InvalidMap)?;
        Ok(Self::unchecked(source, target, pairs))
    }

    /// Builds the map without validation; operations assume validity.
    pub fn unchecked(source: MoranSet, target: MoranSet, pairs: Vec<(Address, Address)>) -> Self {
        let source_index = pairs.iter().enumerate().map(|(i, p)| (p.0.clone(), i)).collect();
        let target_index = pairs.iter().enumerate().map(|(i, p)| (p.1.clone(), i)).collect();
        SectionPairingMap {
            source,
            target,
            pairs,
            source_index,
            target_index,
        }
    }

    pub fn identity(set: MoranSet) -> Self {
        Self::unchecked(set.clone(), set, vec![(Address::root(), Address::root())])
    }

    pub fn validate(&self) -> Result<(), Vec<MapViolation>> {
        validate_map(&self.source, &self.target, &self.pairs)
    }

    pub fn source(&self) -> &MoranSet {
        &self.source
    }

    pub fn target(&self) -> &MoranSet {
        &self.target
    }

    pub fn pairs(&self) -> &[(Address, Address)] {
        &self.pairs
    }

    /// `f⁻¹` as a section-pairing map from `F` to `E`.
    pub fn inverse(&self) -> SectionPairingMap {
        Self::unchecked(
            self.target.clone(),
            self.source.clone(),
            self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        )
    }

    pub fn source_depth(&self) -> usize {
        self.pairs.iter().map(|p| p.0.len()).max().unwrap_or(0)
    }

    pub fn target_depth(&self) -> usize {
        self.pairs.iter().map(|p| p.1.len()).max().unwrap_or(0)
    }

    /// Index of the pair whose source element is a prefix of `sigma`.
    pub fn piece_of(&self, sigma: &Address) -> Option<usize> {
        lookup_prefix(&self.source_index, sigma)
    }

    pub fn target_piece_of(&self, tau: &Address) -> Option<usize> {
        lookup_prefix(&self.target_index, tau)
    }

    /// Similarity ratio `ρ_i = |J_{τ_i}| / |J_{σ_i}|` of piece `i`.
    pub fn piece_ratio(&self, i: usize) -> Rational {
        let (sigma, tau) = &self.pairs[i];
        self.target.diameter_of_rank(tau.len()) / self.source.diameter_of_rank(sigma.len())
    }

    /// Image of a point `x ∈ E_{σ_i}` under the similarity of piece `i`.
    pub fn map_point(&self, i: usize, x: &Rational) -> Rational {
        let (sigma, tau) = &self.pairs[i];
        let from = self.source.basic_interval(sigma).expect("validated");
        let to = self.target.basic_interval(tau).expect("validated");
        &to.left + self.piece_ratio(i) * (x - &from.left)
    }

    /// F-addresses whose cylinders make up `f(E_σ)`, sorted.
    pub fn image_of_cylinder(&self, sigma: &Address) -> Vec<Address> {
        transport(&self.pairs, &self.source_index, sigma, |p| (&p.0, &p.1))
    }

    /// E-addresses whose cylinders make up `f⁻¹(F_τ)`, sorted.
    pub fn preimage_of_cylinder(&self, tau: &Address) -> Vec<Address> {
        transport(&self.pairs, &self.target_index, tau, |p| (&p.1, &p.0))
    }

    /// Rewrites the leading section element of a code prefix.
    pub fn apply_point(&self, code: &Address) -> Result<Address, Error> {
        if let Some(i) = self.piece_of(code) {
            let (sigma, tau) = &self.pairs[i];
            return Ok(tau.concat(&code.strip_prefix(sigma).expect("prefix")));
        }
        let needed = self
            .pairs
            .iter()
            .filter(|p| code.is_prefix_of(&p.0))
            .map(|p| p.0.len())
            .min()
            .unwrap_or(code.len() + 1);
        Err(Error::PrefixTooShort {
            needed,
            got: code.len(),
        })
    }
}

fn lookup_prefix(index: &HashMap<Address, usize>, word: &Address) -> Option<usize> {
    (0..=word.len()).find_map(|l| index.get(&word.prefix(l)).copied())
}

fn transport<'a>(
    pairs: &'a [(Address, Address)],
    index: &HashMap<Address, usize>,
    word: &Address,
    orient: impl Fn(&'a (Address, Address)) -> (&'a Address, &'a Address),
) -> Vec<Address> {
    if let Some(i) = lookup_prefix(index, word) {
        let (from, to) = orient(&pairs[i]);
        return vec![to.concat(&word.strip_prefix(from).expect("prefix"))];
    }
    let mut out: Vec<Address> = pairs
        .iter()
        .map(&orient)
        .filter(|(from, _)| word.is_prefix_of(from))
        .map(|(_, to)| to.clone())
        .collect();
    out.sort();
    out
}
