//! Dynamic graph statistics driven by an incrementally maintained h-index.
//!
//! The crate keeps a sparse undirected graph under edge and vertex updates
//! and maintains, in constant-ish time per update, a family of subgraph
//! statistics: triangle counts (optionally weighted and colored), path
//! counts, star counts, and the full three-vertex induced census. The
//! central device is the graph's h-index, the largest `h` such that `h`
//! vertices have degree at least `h`, which bounds the work every update
//! has to do.

pub mod census;
pub mod gradual;
pub mod graph;
pub mod hindex;
pub mod oracle;
pub mod triangles;

pub use census::CensusCounter;
pub use gradual::{
    CoreChangeCounters, CoreEvent, CoreEventKind, GradualError, GradualPartition,
};
pub use graph::{DynamicGraph, EngineConfig, GraphError, VertexId, VertexPair};
pub use hindex::{ElementId, HIndex, HIndexError};
pub use triangles::TriangleCounter;
