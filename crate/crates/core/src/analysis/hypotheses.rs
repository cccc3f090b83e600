//! Hypothesis report: bounded branching, `γ > 1`, and weak separation.

use std::fmt;

use num_traits::One;

use crate::analysis::wsc::{wsc_constant, WscConstant};
use crate::error::Error;
use crate::moran::MoranSet;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Passes because the condition is vacuous.
    PassVacuous,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::PassVacuous => "pass (vacuous)",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub beta: u32,
    pub gamma: Result<Rational, Error>,
    pub eta0: WscConstant,
    pub bounded_branching: Verdict,
    pub gap_decay: Verdict,
    pub weak_separation: Verdict,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.bounded_branching.passed() && self.gap_decay.passed() && self.weak_separation.passed()
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "beta   = {}", self.beta)?;
        match &self.gamma {
            Ok(g) => writeln!(f, "gamma  = {}", format_rational(g))?,
            Err(e) => writeln!(f, "gamma  = undefined ({e})")?,
        }
        writeln!(f, "eta0   = {}", self.eta0)?;
        writeln!(f, "(i)   sup n_k < inf : {}", self.bounded_branching)?;
        writeln!(f, "(ii)  gamma > 1     : {}", self.gap_decay)?;
        write!(f, "(iii) WSC           : {}", self.weak_separation)
    }
}

pub fn check_hypotheses(set: &MoranSet) -> HypothesisReport {
    let gamma = set.gamma_inf();
    let gap_decay = match &gamma {
        Ok(g) if *g > Rational::one() => Verdict::Pass,
        _ => Verdict::Fail,
    };
    let eta0 = wsc_constant(set);
    let weak_separation = match &eta0 {
        WscConstant::Bounded(v) if *v > Rational::default() => Verdict::Pass,
        WscConstant::Bounded(_) => Verdict::Fail,
        WscConstant::Unconstrained => Verdict::PassVacuous,
    };
    HypothesisReport {
        beta: set.beta(),
        gamma,
        eta0,
        // an eventually periodic sequence is bounded
        bounded_branching: Verdict::Pass,
        gap_decay,
        weak_separation,
    }
}
