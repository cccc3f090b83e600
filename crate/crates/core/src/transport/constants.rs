use num_traits::One;

use crate::analysis::WscConstant;
use crate::error::Error;
use crate::rational::{format_rational, integer, pow, Rational};

/// Smallest positive `p` with `(γ - 1) γ^p > 2C / η₀`.
pub fn compute_p0(lipschitz: &Rational, eta0: &WscConstant, gamma: Option<&Rational>) -> Result<u32, Error> {
    let gamma = match gamma {
        Some(g) if *g > Rational::one() => g,
        Some(g) => {
            return Err(Error::NotApplicable(format!(
                "gamma = {} is not > 1",
                format_rational(g)
            )))
        }
        None => return Err(Error::NotApplicable("gamma is undefined".into())),
    };
    let eta0 = match eta0 {
        WscConstant::Bounded(v) => v,
        WscConstant::Unconstrained => return Err(Error::NotApplicable("eta0 is unconstrained on both sets".into())),
    };
    let target = integer(2) * lipschitz / eta0;
    let base = gamma - Rational::one();
    let mut lhs = base * gamma;
    let mut p = 1u32;
    while lhs <= target {
        lhs *= gamma;
        p += 1;
    }
    Ok(p)
}

/// `ε = 1 / (2 (1 + 8 β^{2p₀+5}))`.
pub fn compute_epsilon(beta: u32, p0: u32) -> Rational {
    let big = integer(8) * pow(&integer(beta as u64), 2 * p0 + 5);
    Rational::one() / (integer(2) * (Rational::one() + big))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn bounded(p: i64, q: i64) -> WscConstant {
        WscConstant::Bounded(ratio(p, q))
    }

    #[test]
    fn p0_examples() {
        let three = ratio(3, 1);
        assert_eq!(compute_p0(&ratio(1, 1), &bounded(1, 1), Some(&three)), Ok(1));
        assert_eq!(compute_p0(&ratio(3, 1), &bounded(1, 1), Some(&three)), Ok(2));
        assert!(compute_p0(&ratio(1, 1), &bounded(1, 1), Some(&ratio(1, 1))).is_err());
        assert!(compute_p0(&ratio(1, 1), &WscConstant::Unconstrained, Some(&three)).is_err());
        assert!(compute_p0(&ratio(1, 1), &bounded(1, 1), None).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(compute_epsilon(2, 2), ratio(1, 8194));
        assert_eq!(compute_epsilon(2, 1), ratio(1, 2050));
        assert_eq!(compute_epsilon(3, 1), ratio(1, 34994));
    }

    #[test]
    fn monotone_in_parameters() {
        let g = ratio(3, 1);
        let mut prev = 0;
        for c in 1..40 {
            let p = compute_p0(&ratio(c, 1), &bounded(1, 2), Some(&g)).unwrap();
            assert!(p >= prev);
            prev = p;
        }
        let mut prev = u32::MAX;
        for g in 2..30 {
            let p = compute_p0(&ratio(5, 1), &bounded(1, 1), Some(&ratio(g, 1))).unwrap();
            assert!(p <= prev);
            prev = p;
        }
        assert!(compute_epsilon(3, 2) < compute_epsilon(2, 2));
        assert!(compute_epsilon(2, 3) < compute_epsilon(2, 2));
    }
}
