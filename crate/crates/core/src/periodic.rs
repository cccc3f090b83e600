//! Eventually periodic sequences indexed from 1.

use crate::error::Error;

/// A sequence `a_1, a_2, ...` given by a finite preamble followed by a
/// nonempty period repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic<T> {
    preamble: Vec<T>,
    period: Vec<T>,
}

impl<T> EventuallyPeriodic<T> {
    pub fn new(preamble: Vec<T>, period: Vec<T>) -> Result<Self, Error> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(EventuallyPeriodic { preamble, period })
    }

    pub fn constant(value: T) -> Self {
        EventuallyPeriodic {
            preamble: Vec::new(),
            period: vec![value],
        }
    }

    pub fn preamble(&self) -> &[T] {
        &self.preamble
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    pub fn preamble_len(&self) -> usize {
        self.preamble.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Value at index `k >= 1`.
    pub fn get(&self, k: usize) -> &T {
        assert!(k >= 1, "sequence index starts at 1");
        let pre = self.preamble.len();
        if k <= pre {
            &self.preamble[k - 1]
        } else {
            &self.period[(k - pre - 1) % self.period.len()]
        }
    }

    /// All distinct positions: the preamble followed by one period.
    pub fn window(&self) -> impl Iterator<Item = &T> {
        self.preamble.iter().chain(self.period.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> EventuallyPeriodic<U> {
        EventuallyPeriodic {
            preamble: self.preamble.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }
}

/// Reduces an index `k >= 1` of a sequence with preamble length `pre` and
/// period `per` to its representative in `1..=pre + per`.
pub fn reduce_index(k: usize, pre: usize, per: usize) -> usize {
    if k <= pre {
        k
    } else {
        pre + (k - pre - 1) % per + 1
    }
}
