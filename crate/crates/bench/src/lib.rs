//! Fixtures shared by the criterion benches.

use moran_core::rational::ratio;
use moran_core::{Address, LayoutRule, MoranSet, ParameterSchedule, SectionPairingMap};

pub fn cantor() -> MoranSet {
    MoranSet::cantor()
}

/// n = 2, 3, then 2 forever, with ratios 1/3, 1/5, then 1/4.
pub fn mixed() -> MoranSet {
    let s = ParameterSchedule::new(vec![2, 3], vec![2], vec![ratio(1, 3), ratio(1, 5)], vec![ratio(1, 4)])
        .expect("valid schedule");
    MoranSet::new(s, LayoutRule::EndsAnchored).expect("valid layout")
}

/// `{0.0 -> 0, 0.1 -> 1.0, 1 -> 1.1}` on the middle-thirds Cantor set.
pub fn worked_map() -> SectionPairingMap {
    let c = cantor();
    let a = |s: &str| s.parse::<Address>().expect("address");
    SectionPairingMap::new(
        c.clone(),
        c,
        vec![(a("0.0"), a("0")), (a("0.1"), a("1.0")), (a("1"), a("1.1"))],
    )
    .expect("valid map")
}
