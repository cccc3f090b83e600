//! Symbolic addresses `σ ∈ Σ^k`, written as dot-separated digits.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A finite word of child indices. The empty word addresses `[0, 1]`.
///
/// Ordering is lexicographic with prefixes first, which coincides with the
/// left-to-right order of basic intervals of equal rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(Vec<u32>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn new(digits: Vec<u32>) -> Self {
        Address(digits)
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, digit: u32) -> Address {
        let mut digits = Vec::with_capacity(self.0.len() + 1);
        digits.extend_from_slice(&self.0);
        digits.push(digit);
        Address(digits)
    }

    pub fn concat(&self, tail: &Address) -> Address {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&tail.0);
        Address(digits)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The continuation `ω` with `self = prefix * ω`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Address) -> Option<Address> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Address(rest.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Address {
        Address(self.0[..len].to_vec())
    }

    pub fn parent(&self) -> Option<Address> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.prefix(self.0.len() - 1))
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    /// `""` parses to the root; otherwise digits separated by `.`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Address::root());
        }
        text.split('.')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::ParseAddress(text.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Address)
    }
}

impl From<Vec<u32>> for Address {
    fn from(digits: Vec<u32>) -> Self {
        Address(digits)
    }
}

impl<const N: usize> From<[u32; N]> for Address {
    fn from(digits: [u32; N]) -> Self {
        Address(digits.to_vec())
    }
}
