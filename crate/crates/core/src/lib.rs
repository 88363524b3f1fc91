//! Packing far-apart paths and covering them with few small balls.

pub mod bits;
pub mod caps;
pub mod covering;
pub mod error;
pub mod generators;
pub mod graph;
pub mod packing;
pub mod paths;
pub mod separation;
pub mod tangle;
pub mod transfer;
pub mod tree;

/// Version of this library, embedded in experiment reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use caps::Caps;
pub use error::{Error, Result};
pub use generators::InstanceSpec;
pub use graph::{certify_centered, CenteredSet, Certification, Graph, SearchMode, Vertex, VertexSet};
pub use paths::{PathFamily, PathWitness};
pub use separation::{Location, Separation};
pub use tangle::Tangle;
pub use transfer::{QuasiIsometry, WitnessFunctions};
pub use tree::TreeDecomposition;
