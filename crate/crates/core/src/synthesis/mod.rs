//! Combinatorics of the Auslander-Reiten quiver of an infinite quiver:
//! which components exist, knitting of the preprojective and preinjective
//! ones, quasi-wings, and the linear components reached from thin
//! representations.

mod chain;
mod dot;
mod inventory;
mod knit;
mod verify;
mod wing;

use crate::oracle::OracleError;
use crate::quiver::QuiverError;
use crate::rep::RepError;

pub use chain::{chain_explore, repeated_classes, span_label, span_member, Chain, Side, ThinFamily, ThinMember};
pub use dot::ToDot;
pub use inventory::{component_inventory, ComponentInventory, WingConstraints, WingCount};
pub use knit::{knit_preinjective, knit_preprojective, KnitStatus, KnitVertex, KnittedComponent};
pub use verify::{chain_cases, knit_oracle_agreement, run_chain_case, verify_fixtures, ChainCase};
pub use wing::{in_wing, quasi_wing, TranslationFragment, WingInterval, WingWindow};

#[derive(Debug, thiserror::Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("empty interval")]
    EmptyInterval,
    #[error("an unbounded interval needs a window")]
    MissingWindow,
    #[error("the seed lies in rrep(Q)")]
    SeedInRrep,
    #[error("the seed is not indecomposable")]
    NotIndecomposable,
    #[error("more than one neighbor on the {side:?} side: {candidates:?}")]
    Ambiguous { side: Side, candidates: Vec<String> },
}
