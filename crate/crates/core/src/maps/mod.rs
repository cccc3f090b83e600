//! Section-pairing maps: bijections between two complete prefix codes
//! continued by the identity on codes, realized geometrically as piecewise
//! similarities.

pub mod bounds;
pub mod pairing;
pub mod section;

use std::fmt;

use crate::address::Address;
use crate::rational::{format_rational, Rational};

pub use bounds::{lipschitz_bounds, LipschitzBounds};
pub use pairing::{validate_map, SectionPairingMap};
pub use section::Section;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    InvalidAddress {
        side: Side,
        address: Address,
        reason: String,
    },
    IncompleteSection {
        side: Side,
        measure: Rational,
    },
    PrefixOverlap {
        side: Side,
        prefix: Address,
        extension: Address,
    },
    NotBijective {
        side: Side,
        address: Address,
    },
    LevelMismatch {
        source: Address,
        target: Address,
        offset: usize,
        n_source: u32,
        n_target: u32,
    },
    LayoutMismatch {
        source: Address,
        target: Address,
        note: String,
    },
}

impl MapViolation {
    pub fn code(&self) -> &'static str {
        match self {
            MapViolation::InvalidAddress { .. } => "InvalidAddress",
            MapViolation::IncompleteSection { .. } => "IncompleteSection",
            MapViolation::PrefixOverlap { .. } => "PrefixOverlap",
            MapViolation::NotBijective { .. } => "NotBijective",
            MapViolation::LevelMismatch { .. } => "LevelMismatch",
            MapViolation::LayoutMismatch { .. } => "LayoutMismatch",
        }
    }
}

fn show(a: &Address) -> String {
    format!("\"{a}\"")
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.code())?;
        match self {
            MapViolation::InvalidAddress { side, address, reason } => {
                write!(f, "{side} address {} is invalid ({reason})", show(address))
            }
            MapViolation::IncompleteSection { side, measure } => write!(
                f,
                "{side} section has total measure {} instead of 1",
                format_rational(measure)
            ),
            MapViolation::PrefixOverlap {
                side,
                prefix,
                extension,
            } => write!(f, "{side} address {} is a prefix of {}", show(prefix), show(extension)),
            MapViolation::NotBijective { side, address } => {
                write!(f, "{side} address {} is paired more than once", show(address))
            }
            MapViolation::LevelMismatch {
                source,
                target,
                offset,
                n_source,
                n_target,
            } => write!(
                f,
                "pair {} -> {}: {offset} levels below, n = {n_source} on the source but {n_target} on the target",
                show(source),
                show(target)
            ),
            MapViolation::LayoutMismatch { source, target, note } => {
                write!(f, "pair {} -> {}: {note}", show(source), show(target))
            }
        }
    }
}
