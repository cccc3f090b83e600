use thiserror::Error;

use crate::address::Address;
use crate::maps::MapViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("period of an eventually periodic sequence must be nonempty")]
    EmptyPeriod,
    #[error("n_{level} = {n}, but every branching number must be at least 2")]
    BranchingTooSmall { level: usize, n: u32 },
    #[error("r_{level} = {r} must be positive")]
    NonPositiveRatio { level: usize, r: String },
    #[error("n_{level} * r_{level} = {product} exceeds 1: children cannot fit with disjoint interiors")]
    RatioTooLarge { level: usize, product: String },
    #[error("invalid layout at level {level}: {reason}")]
    InvalidLayout { level: usize, reason: String },
    #[error("digit {digit} at position {position} is out of range (n = {n})")]
    DigitOutOfRange { position: usize, digit: u32, n: u32 },
    #[error("gamma undefined: total gap at level {level} is zero")]
    GammaUndefined { level: usize },
    #[error("enumeration of {requested} intervals exceeds the node budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },
    #[error("basic intervals {left} and {right} overlap in their interiors")]
    OverlappingIntervals { left: Address, right: Address },
    #[error("invalid section-pairing map: {}", describe_violations(.0))]
    InvalidMap(Vec<MapViolation>),
    #[error("code prefix of length {got} is shorter than the matching section element ({needed})")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("rank-{rank} cylinders {first} and {second} touch; refine the depth or use a layout with positive gaps")]
    TouchingCylinders {
        rank: usize,
        first: Address,
        second: Address,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("equivalence bound violated at cylinder {address}: {detail}")]
    BoundViolated { address: Address, detail: String },
    #[error("decomposition fails for component at {component}: {detail}")]
    DecompositionFails { component: Address, detail: String },
    #[error("ratio identity violated: lhs {lhs}, rhs {rhs}")]
    IdentityViolated { lhs: String, rhs: String },
    #[error("no sub-cylinder of {cylinder} certified within {max_depth} extra levels")]
    NotFoundWithinDepth { cylinder: Address, max_depth: usize },
    #[error("invalid rational `{0}` (expected p/q with q > 0)")]
    ParseRational(String),
    #[error("invalid address `{0}` (expected dot-separated digits)")]
    ParseAddress(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyPeriod => "EmptyPeriod",
            Error::BranchingTooSmall { .. } => "BranchingTooSmall",
            Error::NonPositiveRatio { .. } => "NonPositiveRatio",
            Error::RatioTooLarge { .. } => "RatioTooLarge",
            Error::InvalidLayout { .. } => "InvalidLayout",
            Error::DigitOutOfRange { .. } => "DigitOutOfRange",
            Error::GammaUndefined { .. } => "GammaUndefined",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::OverlappingIntervals { .. } => "OverlappingIntervals",
            Error::InvalidMap(_) => "InvalidMap",
            Error::PrefixTooShort { .. } => "PrefixTooShort",
            Error::TouchingCylinders { .. } => "TouchingCylinders",
            Error::NotApplicable(_) => "NotApplicable",
            Error::BoundViolated { .. } => "BoundViolated",
            Error::DecompositionFails { .. } => "DecompositionFails",
            Error::IdentityViolated { .. } => "IdentityViolated",
            Error::NotFoundWithinDepth { .. } => "NotFoundWithinDepth",
            Error::ParseRational(_) => "ParseRational",
            Error::ParseAddress(_) => "ParseAddress",
        }
    }
}

fn describe_violations(v: &[MapViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
