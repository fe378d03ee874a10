use serde::{Serialize, Serializer};

use crate::quiver::{classify_quiver, ClassificationReport, DynkinType, Quiver, QuiverError};

/// Number of quasi-wings: 0, 1, 2 or infinitely many.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WingCount {
    Finite(u8),
    Omega,
}

impl Serialize for WingCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            WingCount::Finite(n) => s.serialize_u8(*n),
            WingCount::Omega => s.serialize_str("omega"),
        }
    }
}

/// Which quasi-wing shapes the quiver permits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WingConstraints {
    pub right_infinite: bool,
    pub left_infinite: bool,
    pub finite: bool,
}

/// The components of the Auslander-Reiten quiver of `rep(Q)`, as far as
/// they are determined by the shape of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ComponentInventory {
    pub preprojective_full: bool,
    pub preinjective_full: bool,
    pub quasi_wings: WingCount,
    pub wing_constraints: WingConstraints,
    pub linear_components: bool,
}

impl ComponentInventory {
    pub fn from_classification(c: &ClassificationReport) -> ComponentInventory {
        ComponentInventory {
            preprojective_full: !c.sourced,
            preinjective_full: !c.sinked,
            quasi_wings: match c.dynkin {
                DynkinType::AInf => WingCount::Finite(0),
                DynkinType::DInf => WingCount::Finite(1),
                DynkinType::AInfInf => WingCount::Finite(2),
                DynkinType::NotDynkin => WingCount::Omega,
            },
            wing_constraints: WingConstraints {
                right_infinite: c.sinked,
                left_infinite: c.sourced,
                finite: c.sinked && c.sourced,
            },
            linear_components: !c.star,
        }
    }
}

/// Errors for finite or disconnected quivers.
pub fn component_inventory(q: &Quiver) -> Result<ComponentInventory, QuiverError> {
    Ok(ComponentInventory::from_classification(&classify_quiver(q)?))
}
