//! Pushforward of the uniform Bernoulli measure through a section map, the
//! constants of the component decomposition, and the search for a cylinder
//! on which the pushforward-to-measure ratio is constant.

pub mod constants;
pub mod decompose;
pub mod identity;
pub mod locus;
pub mod phi;
pub mod pushforward;

use num_traits::One;

use crate::analysis::{check_hypotheses, wsc_constant, WscConstant};
use crate::error::Error;
use crate::maps::{lipschitz_bounds, SectionPairingMap};
use crate::rational::Rational;

pub use constants::{compute_epsilon, compute_p0};
pub use decompose::{decompose_image, decompose_image_at, image_parts, ComponentIndex, Decomposition, ImageParts};
pub use identity::{ratio_identity_check, IdentityReport};
pub use locus::{find_preserving_cylinder, Locus};
pub use phi::{chi_over_depth, phi_of_component, phi_of_cylinder, ChiReport, RatioRecord};
pub use pushforward::{check_equivalence_bound, pushforward_cylinder_mass, EquivalenceReport};

/// The map together with the constants the decomposition needs.
#[derive(Clone, Debug)]
pub struct TransportContext {
    pub map: SectionPairingMap,
    /// Certified upper bound on the bi-Lipschitz constant.
    pub lipschitz: Rational,
    /// Common WSC constant of source and target, at most 1.
    pub eta0: WscConstant,
    /// Common `γ`; `None` when a total gap vanishes on either side.
    pub gamma: Option<Rational>,
    pub beta: u32,
    pub budget: u64,
}

impl TransportContext {
    /// Certifies `C` with [`lipschitz_bounds`] at `lipschitz_depth`.
    pub fn new(map: SectionPairingMap, lipschitz_depth: usize, budget: u64) -> Result<Self, Error> {
        let bounds = lipschitz_bounds(&map, lipschitz_depth, budget)?;
        Ok(Self::with_constant(map, bounds.upper, budget))
    }

    /// Uses a caller-supplied Lipschitz constant, trusted as given.
    pub fn with_constant(map: SectionPairingMap, lipschitz: Rational, budget: u64) -> Self {
        let source = check_hypotheses(map.source());
        let target = check_hypotheses(map.target());
        let gamma = match (source.gamma, target.gamma) {
            (Ok(a), Ok(b)) => Some(a.min(b)),
            _ => None,
        };
        // Components in touching parents are separated by end space alone,
        // which never exceeds the free length, so constants above 1 are capped.
        let eta0 = match wsc_constant(map.source()).common(&wsc_constant(map.target())) {
            WscConstant::Bounded(v) if v > Rational::one() => WscConstant::Bounded(Rational::one()),
            other => other,
        };
        let beta = source.beta.max(target.beta);
        TransportContext {
            map,
            lipschitz,
            eta0,
            gamma,
            beta,
            budget,
        }
    }

    /// `p₀` for this context's `C`, `η₀`, `γ`.
    pub fn p0(&self) -> Result<u32, Error> {
        compute_p0(&self.lipschitz, &self.eta0, self.gamma.as_ref())
    }
}
