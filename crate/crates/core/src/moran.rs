//! A homogeneous Moran set in `[0, 1]`: schedule plus layout, with exact
//! basic-interval geometry, Bernoulli cylinder masses and total gaps.

use num_traits::{One, Zero};

use crate::address::Address;
use crate::error::Error;
use crate::interval::Interval;
use crate::layout::{check_offsets, LayoutRule};
use crate::periodic::reduce_index;
use crate::rational::{integer, Rational};
use crate::schedule::ParameterSchedule;

/// Everything needed to place the children of a rank-`k-1` interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: u32,
    pub r: Rational,
    pub offsets: Vec<Rational>,
}

impl Level {
    /// Free length `1 - n r` of a unit parent.
    pub fn free_fraction(&self) -> Rational {
        Rational::one() - integer(self.n as u64) * &self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoranSet {
    schedule: ParameterSchedule,
    layout: LayoutRule,
    pre: usize,
    per: usize,
    /// Levels `1..=pre + per`.
    levels: Vec<Level>,
    /// `lead[k]`: relative offset of `min E_σ` inside `J_σ` for `|σ| = k`,
    /// for `k` in `0..=pre + per`.
    lead: Vec<Rational>,
    /// `trail[k]`: relative distance from `max E_σ` to the right end of `J_σ`.
    trail: Vec<Rational>,
}

impl MoranSet {
    pub fn new(schedule: ParameterSchedule, layout: LayoutRule) -> Result<Self, Error> {
        let pre = schedule.preamble_len().max(layout.preamble_len());
        let per = num_integer::lcm(schedule.period_len(), layout.period_len());
        let mut levels = Vec::with_capacity(pre + per);
        for k in 1..=pre + per {
            let (n, r) = schedule.value(k);
            let offsets = layout.offsets(k, n, r);
            check_offsets(k, n, r, &offsets)?;
            levels.push(Level {
                n,
                r: r.clone(),
                offsets,
            });
        }
        let lead = extreme_offsets(&levels, pre, per, |lvl| lvl.offsets[0].clone());
        let trail = extreme_offsets(&levels, pre, per, |lvl| {
            Rational::one() - lvl.offsets.last().expect("n >= 2") - &lvl.r
        });
        Ok(MoranSet {
            schedule,
            layout,
            pre,
            per,
            levels,
            lead,
            trail,
        })
    }

    pub fn cantor() -> Self {
        let s = ParameterSchedule::constant(2, crate::rational::ratio(1, 3)).expect("valid");
        MoranSet::new(s, LayoutRule::EndsAnchored).expect("valid")
    }

    pub fn schedule(&self) -> &ParameterSchedule {
        &self.schedule
    }

    pub fn layout(&self) -> &LayoutRule {
        &self.layout
    }

    /// Levels `k > window_preamble()` repeat with period `window_period()`.
    pub fn window_preamble(&self) -> usize {
        self.pre
    }

    pub fn window_period(&self) -> usize {
        self.per
    }

    /// Number of distinct levels: one preamble plus one period.
    pub fn window_len(&self) -> usize {
        self.pre + self.per
    }

    pub fn reduce(&self, k: usize) -> usize {
        reduce_index(k, self.pre, self.per)
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[self.reduce(k) - 1]
    }

    pub fn branching(&self, k: usize) -> u32 {
        self.level(k).n
    }

    pub fn beta(&self) -> u32 {
        self.schedule.beta()
    }

    /// Rejects digits outside `0..n_j`.
    pub fn check_address(&self, sigma: &Address) -> Result<(), Error> {
        for (j, &digit) in sigma.digits().iter().enumerate() {
            let n = self.branching(j + 1);
            if digit >= n {
                return Err(Error::DigitOutOfRange {
                    position: j + 1,
                    digit,
                    n,
                });
            }
        }
        Ok(())
    }

    /// `J_σ`.
    pub fn basic_interval(&self, sigma: &Address) -> Result<Interval, Error> {
        self.check_address(sigma)?;
        let mut left = Rational::zero();
        let mut len = Rational::one();
        for (j, &digit) in sigma.digits().iter().enumerate() {
            let lvl = self.level(j + 1);
            left += &len * &lvl.offsets[digit as usize];
            len *= &lvl.r;
        }
        let right = &left + &len;
        Ok(Interval::new(left, right))
    }

    /// Child `i` of a rank-`k` interval `parent`.
    pub fn child_interval(&self, parent: &Interval, k: usize, i: u32) -> Interval {
        let lvl = self.level(k + 1);
        let len = parent.length();
        let left = &parent.left + &len * &lvl.offsets[i as usize];
        let right = &left + &len * &lvl.r;
        Interval::new(left, right)
    }

    /// Uniform Bernoulli mass `μ(E_σ) = 1/(n_1 ⋯ n_k)`.
    pub fn cylinder_measure(&self, sigma: &Address) -> Rational {
        self.measure_of_rank(sigma.len())
    }

    pub fn measure_of_rank(&self, k: usize) -> Rational {
        Rational::new(One::one(), self.count_of_rank(k))
    }

    /// `n_1 ⋯ n_k`, the number of rank-`k` basic intervals.
    pub fn count_of_rank(&self, k: usize) -> num_bigint::BigInt {
        (1..=k).fold(num_bigint::BigInt::one(), |acc, j| acc * self.branching(j))
    }

    /// `r_1 ⋯ r_k`, the common length of rank-`k` basic intervals.
    pub fn diameter_of_rank(&self, k: usize) -> Rational {
        (1..=k).fold(Rational::one(), |acc, j| acc * &self.level(j).r)
    }

    /// Total gap `Δ_k = r_1 ⋯ r_{k-1} (1 - n_k r_k)` for `k >= 1`.
    pub fn total_gap(&self, k: usize) -> Rational {
        assert!(k >= 1, "total gaps start at rank 1");
        self.diameter_of_rank(k - 1) * self.level(k).free_fraction()
    }

    /// `γ = inf_k Δ_k / Δ_{k+1}`, exact over one preamble-plus-period window.
    pub fn gamma_inf(&self) -> Result<Rational, Error> {
        for k in 1..=self.window_len() {
            if self.level(k).free_fraction().is_zero() {
                return Err(Error::GammaUndefined { level: k });
            }
        }
        Ok((1..=self.window_len())
            .map(|k| self.gap_ratio(k))
            .min()
            .expect("window is nonempty"))
    }

    /// `Δ_k / Δ_{k+1} = (1 - n_k r_k) / (r_k (1 - n_{k+1} r_{k+1}))`.
    pub fn gap_ratio(&self, k: usize) -> Rational {
        let here = self.level(k);
        let next = self.level(k + 1);
        here.free_fraction() / (&here.r * next.free_fraction())
    }

    /// Minimum of `Δ_k / Δ_{k+1}` over `1 <= k < depth` only, for callers
    /// that want the truncated quantity on a finite prefix.
    pub fn gamma_truncated(&self, depth: usize) -> Result<Option<Rational>, Error> {
        for k in 1..=depth {
            if self.level(k).free_fraction().is_zero() {
                return Err(Error::GammaUndefined { level: k });
            }
        }
        Ok((1..depth).map(|k| self.gap_ratio(k)).min())
    }

    /// Convex hull `[min E_σ, max E_σ]` of the cylinder `E_σ = J_σ ∩ E`.
    pub fn cylinder_hull(&self, sigma: &Address) -> Result<Interval, Error> {
        let j = self.basic_interval(sigma)?;
        Ok(self.hull_within(&j, sigma.len()))
    }

    /// Hull of `E ∩ J` for a rank-`k` basic interval `J`.
    pub fn hull_within(&self, basic: &Interval, k: usize) -> Interval {
        let len = basic.length();
        let lead = &self.lead[self.extreme_index(k)];
        let trail = &self.trail[self.extreme_index(k)];
        Interval::new(&basic.left + &len * lead, &basic.right - &len * trail)
    }

    fn extreme_index(&self, k: usize) -> usize {
        if k <= self.pre {
            k
        } else {
            self.pre + (k - self.pre) % self.per
        }
    }
}

/// Solves `x_k = a_{k+1} + r_{k+1} x_{k+1}` for an eventually periodic level
/// sequence, returning `x_0 ..= x_{pre+per}` (with `x_{pre+per} = x_pre`).
fn extreme_offsets(levels: &[Level], pre: usize, per: usize, head: impl Fn(&Level) -> Rational) -> Vec<Rational> {
    // x_pre = S / (1 - P) with S = Σ_j a_{pre+j} Π_{i<j} r_{pre+i}, P = Π r.
    let mut sum = Rational::zero();
    let mut prod = Rational::one();
    for lvl in &levels[pre..pre + per] {
        sum += &prod * head(lvl);
        prod *= &lvl.r;
    }
    let periodic = sum / (Rational::one() - prod);
    let mut out = vec![Rational::zero(); pre + per + 1];
    out[pre + per] = periodic;
    for k in (0..pre + per).rev() {
        let lvl = &levels[k];
        out[k] = head(lvl) + &lvl.r * &out[k + 1];
    }
    out
}
