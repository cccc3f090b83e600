//! Parameter schedules `{n_k}`, `{r_k}`.

use num_traits::{One, Signed};

use crate::error::Error;
use crate::periodic::{reduce_index, EventuallyPeriodic};
use crate::rational::{format_rational, integer, Rational};

/// Branching numbers and contraction ratios of a homogeneous Moran family,
/// both eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSchedule {
    n: EventuallyPeriodic<u32>,
    r: EventuallyPeriodic<Rational>,
    pre: usize,
    per: usize,
}

impl ParameterSchedule {
    pub fn new(
        n_preamble: Vec<u32>,
        n_period: Vec<u32>,
        r_preamble: Vec<Rational>,
        r_period: Vec<Rational>,
    ) -> Result<Self, Error> {
        Self::from_sequences(
            EventuallyPeriodic::new(n_preamble, n_period)?,
            EventuallyPeriodic::new(r_preamble, r_period)?,
        )
    }

    /// Same `(n, r)` at every level.
    pub fn constant(n: u32, r: Rational) -> Result<Self, Error> {
        Self::new(vec![], vec![n], vec![], vec![r])
    }

    pub fn from_sequences(n: EventuallyPeriodic<u32>, r: EventuallyPeriodic<Rational>) -> Result<Self, Error> {
        let pre = n.preamble_len().max(r.preamble_len());
        let per = num_integer::lcm(n.period_len(), r.period_len());
        let schedule = ParameterSchedule { n, r, pre, per };
        for k in 1..=pre + per {
            let (n_k, r_k) = schedule.value(k);
            if n_k < 2 {
                return Err(Error::BranchingTooSmall { level: k, n: n_k });
            }
            if !r_k.is_positive() {
                return Err(Error::NonPositiveRatio {
                    level: k,
                    r: format_rational(r_k),
                });
            }
            let product = integer(n_k as u64) * r_k;
            if product > Rational::one() {
                return Err(Error::RatioTooLarge {
                    level: k,
                    product: format_rational(&product),
                });
            }
        }
        Ok(schedule)
    }

    /// `(n_k, r_k)` for `k >= 1`.
    pub fn value(&self, k: usize) -> (u32, &Rational) {
        (*self.n.get(k), self.r.get(k))
    }

    pub fn branching(&self, k: usize) -> u32 {
        *self.n.get(k)
    }

    pub fn ratio(&self, k: usize) -> &Rational {
        self.r.get(k)
    }

    pub fn branching_sequence(&self) -> &EventuallyPeriodic<u32> {
        &self.n
    }

    pub fn ratio_sequence(&self) -> &EventuallyPeriodic<Rational> {
        &self.r
    }

    /// Length of the joint preamble: level `k > preamble_len()` repeats with
    /// [`period_len`](Self::period_len).
    pub fn preamble_len(&self) -> usize {
        self.pre
    }

    pub fn period_len(&self) -> usize {
        self.per
    }

    /// `β = sup n_k`.
    pub fn beta(&self) -> u32 {
        self.n.window().copied().max().expect("period is nonempty")
    }

    pub fn reduce(&self, k: usize) -> usize {
        reduce_index(k, self.pre, self.per)
    }
}
