//! Brute-force Auslander-Reiten theory for linear quivers.
//!
//! The indecomposables of a linear quiver are its interval modules, so the
//! catalog is complete without any theory. Everything else (radical layers,
//! almost split sequences, irreducibility) is plain linear algebra on that
//! catalog and serves as a reference for the rest of the crate.

mod catalog;
mod sequence;
mod verify;

use crate::quiver::QuiverError;
use crate::rep::RepError;

pub use catalog::{
    build_catalog, linear_orientations, linear_quiver, radical_filtration, IndecomposableCatalog, Interval,
    RadicalFiltration, MAX_VERTICES,
};
pub use sequence::{
    almost_split_sequence_ending_at, certify_irreducible, certify_irreducible_by_factorization, AlmostSplitSequence,
};
pub use verify::{
    composite_checks, find_cycle, irreducible_morphism_checks, verify_catalog, verify_oracle, Check, LabeledMorphism,
    VerificationReport, FACTORIZATION_LIMIT,
};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("the oracle only handles quivers without tails")]
    HasTails,
    #[error("the underlying graph is not a line")]
    NotLinear,
    #[error("{0} vertices exceed the oracle limit")]
    TooLarge(usize),
    #[error("no almost split sequence ends at the projective {0}")]
    ProjectiveEnd(String),
    #[error("representation is not in the catalog")]
    NotInCatalog,
    #[error("could not build an exact sequence ending at {0}")]
    NotExact(String),
}
