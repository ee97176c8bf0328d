//! Near-bipartite partitions of planar graphs without cycles of length 4 to 7.
//!
//! The crate provides an exact IF-coloring and superextension solver,
//! rotation-system planar maps, detectors for the reducible configurations
//! (tetrads, M-faces, MM-faces, Fa-faces), the reductions with their
//! coloring lifts, and an exact discharging ledger with audits.

pub mod builder;
pub mod coloring;
pub mod corpus;
pub mod detect;
pub mod discharge;
pub mod embed;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod reduce;

pub use coloring::{Color, Coloring, Violation};
pub use embed::{Face, FaceId, PlanarMap};
pub use graph::{CycleRef, Graph, Vertex};
