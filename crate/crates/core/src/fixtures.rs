//! The named quivers shipped in `fixtures/`.

use std::sync::Arc;

use crate::quiver::Quiver;

/// `(name, JSON text)` for every shipped quiver.
pub const FIXTURES: [(&str, &str); 7] = [
    ("ray", include_str!("../../../fixtures/ray.json")),
    ("coray", include_str!("../../../fixtures/coray.json")),
    ("zigzag", include_str!("../../../fixtures/zigzag.json")),
    ("example2", include_str!("../../../fixtures/example2.json")),
    ("dinf", include_str!("../../../fixtures/dinf.json")),
    ("figure1-star", include_str!("../../../fixtures/figure1-star.json")),
    ("comb", include_str!("../../../fixtures/comb.json")),
];

/// Parses a shipped quiver by name.
pub fn fixture(name: &str) -> Option<Arc<Quiver>> {
    let (_, text) = FIXTURES.iter().find(|(n, _)| *n == name)?;
    Some(Arc::new(Quiver::from_json(text).expect("shipped fixtures are valid")))
}

/// All shipped quivers in a fixed order.
pub fn all_fixtures() -> Vec<(&'static str, Arc<Quiver>)> {
    FIXTURES
        .iter()
        .map(|(n, _)| (*n, fixture(n).expect("listed")))
        .collect()
}
