//! Finite-depth structure: approximations, components, separation and the
//! hypothesis report.

pub mod approximation;
pub mod connectivity;
pub mod hypotheses;
pub mod wsc;

pub use approximation::{
    approximation, components, components_within, count_basic_intervals, descendant_addresses, descendants,
    direct_offsprings, merge_touching, Approximation, BasicInterval, Component, DEFAULT_NODE_BUDGET,
};
pub use connectivity::{is_delta_connected, max_gap, DeltaConnectivity};
pub use hypotheses::{check_hypotheses, HypothesisReport, Verdict};
pub use wsc::{level_wsc_ratio, wsc_constant, WscConstant};
