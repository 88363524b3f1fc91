//! Tangles at desk scale: separation enumeration, axiom checks, the tangle
//! of a family of connected subgraphs, and the decompositions built on it.
//!
//! Separations are compared on vertex sets only (see
//! [`Separation`](crate::Separation)); membership of every tangle here
//! depends only on that data.

mod axioms;
mod lemma;
mod multifold;
mod separations;

pub use axioms::{verify_tangle, Axiom, Tangle, TangleDefinition, TangleVerdict};
pub use lemma::{
    build_family_tangle, check_outcome, tangle_trichotomy, TangleBuild, TangleRefusal, TrichotomyOutcome,
    TrichotomyParams,
};
pub use multifold::{
    check_decomposition, tangle_decompose, DecomposeParams, Decomposition, TangleRegion, DECOMPOSE_MAX_K,
    DECOMPOSE_MAX_THETA,
};
pub use separations::{enumerate_separations, enumerate_separations_within};
