//! Representations of strongly locally finite quivers.

pub mod fixtures;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod rep;
pub mod synthesis;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] quiver::QuiverError),
    #[error(transparent)]
    Rep(#[from] rep::RepError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Synthesis(#[from] synthesis::SynthesisError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
