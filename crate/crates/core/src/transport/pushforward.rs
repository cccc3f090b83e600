use num_traits::{One, Zero};

use crate::address::Address;
use crate::analysis::descendant_addresses;
use crate::error::Error;
use crate::rational::{format_rational, integer, Rational};

use super::TransportContext;

/// `ν(f(E_σ))`, summed over the exact image cylinders.
pub fn pushforward_cylinder_mass(ctx: &TransportContext, sigma: &Address) -> Rational {
    ctx.map
        .image_of_cylinder(sigma)
        .iter()
        .map(|tau| ctx.map.target().cylinder_measure(tau))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub depth: usize,
    /// `C + 2`.
    pub alpha: Rational,
    /// Largest `max(φ, 1/φ)` seen in either direction.
    pub alpha_observed: Rational,
    pub max_phi: Rational,
    pub min_phi: Rational,
    pub cylinders_checked: usize,
}

/// Checks `α⁻¹ μ(E_σ) <= ν(f(E_σ)) <= α μ(E_σ)` with `α = C + 2` for every
/// `|σ| <= depth`, and the same for `f⁻¹` on every `F_τ` with `|τ| <= depth`.
pub fn check_equivalence_bound(ctx: &TransportContext, depth: usize) -> Result<EquivalenceReport, Error> {
    let alpha = &ctx.lipschitz + integer(2);
    let inverse = ctx.map.inverse();
    let mut report = EquivalenceReport {
        depth,
        alpha: alpha.clone(),
        alpha_observed: Rational::one(),
        max_phi: Rational::zero(),
        min_phi: Rational::zero(),
        cylinders_checked: 0,
    };
    let mut first = true;
    for k in 0..=depth {
        for sigma in descendant_addresses(ctx.map.source(), &Address::root(), k, ctx.budget)? {
            let mu = ctx.map.source().cylinder_measure(&sigma);
            let nu = pushforward_cylinder_mass(ctx, &sigma);
            check_pair(&sigma, &mu, &nu, &alpha, "nu(f(E))", "mu(E)")?;
            let phi = &nu / &mu;
            if first || phi > report.max_phi {
                report.max_phi = phi.clone();
            }
            if first || phi < report.min_phi {
                report.min_phi = phi.clone();
            }
            first = false;
            report.alpha_observed = report.alpha_observed.clone().max(spread(&nu, &mu));
            report.cylinders_checked += 1;
        }
        for tau in descendant_addresses(ctx.map.target(), &Address::root(), k, ctx.budget)? {
            let nu = ctx.map.target().cylinder_measure(&tau);
            let mu: Rational = inverse
                .image_of_cylinder(&tau)
                .iter()
                .map(|s| ctx.map.source().cylinder_measure(s))
                .sum();
            check_pair(&tau, &nu, &mu, &alpha, "mu(f^-1(F))", "nu(F)")?;
            report.alpha_observed = report.alpha_observed.clone().max(spread(&nu, &mu));
            report.cylinders_checked += 1;
        }
    }
    Ok(report)
}

fn spread(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a / b
    } else {
        b / a
    }
}

/// `mass <= α·base` and `base <= α·mass`.
fn check_pair(
    at: &Address,
    base: &Rational,
    mass: &Rational,
    alpha: &Rational,
    mass_name: &str,
    base_name: &str,
) -> Result<(), Error> {
    if mass > &(alpha * base) {
        return Err(Error::BoundViolated {
            address: at.clone(),
            detail: format!(
                "{mass_name} = {} > alpha * {base_name} = {}",
                format_rational(mass),
                format_rational(&(alpha * base))
            ),
        });
    }
    if base > &(alpha * mass) {
        return Err(Error::BoundViolated {
            address: at.clone(),
            detail: format!(
                "{base_name} = {} > alpha * {mass_name} = {}",
                format_rational(base),
                format_rational(&(alpha * mass))
            ),
        });
    }
    Ok(())
}
