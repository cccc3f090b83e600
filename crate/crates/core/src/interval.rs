use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, Rational};

/// Closed interval `[left, right]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Self {
        debug_assert!(left <= right);
        Interval { left, right }
    }

    pub fn unit() -> Self {
        Interval::new(Rational::zero(), num_traits::One::one())
    }

    /// Diameter `|A|`.
    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    /// `dist(A, B) = inf |x - y|`; zero when the intervals meet.
    pub fn distance(&self, other: &Interval) -> Rational {
        if other.left > self.right {
            &other.left - &self.right
        } else if self.left > other.right {
            &self.left - &other.right
        } else {
            Rational::zero()
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            (&self.left).min(&other.left).clone(),
            (&self.right).max(&other.right).clone(),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.left), format_rational(&self.right))
    }
}
