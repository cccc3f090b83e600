//! Exact computations on homogeneous Moran sets in `[0, 1]`.
//!
//! A Moran set is fixed by eventually periodic branching numbers `n_k`,
//! contraction ratios `r_k`, and a [`LayoutRule`] placing children inside
//! their parent. All geometry and measures are exact rationals.
//!
//! - [`moran`]: basic intervals `J_σ`, Bernoulli masses, total gaps, `γ`.
//! - [`analysis`]: approximations, components, weak separation, hypotheses.
//! - [`maps`]: section-pairing bi-Lipschitz maps and their constants.
//! - [`transport`]: pushforward masses, `φ`, the component decomposition and
//!   the constant-ratio cylinder search.

pub mod address;
pub mod analysis;
pub mod error;
pub mod interval;
pub mod layout;
pub mod maps;
pub mod moran;
pub mod periodic;
pub mod rational;
pub mod schedule;
pub mod transport;

pub use address::Address;
pub use error::Error;
pub use interval::Interval;
pub use layout::LayoutRule;
pub use maps::{LipschitzBounds, MapViolation, Section, SectionPairingMap};
pub use moran::{Level, MoranSet};
pub use periodic::EventuallyPeriodic;
pub use rational::{format_rational, parse_rational, Rational};
pub use schedule::ParameterSchedule;
pub use transport::TransportContext;
