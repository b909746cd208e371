//! Vertices, edges, colex indexing, loose structures and colorings.

mod coloring;
pub(crate) mod colex;
mod edge;
pub mod lrc;
mod structure;

pub use coloring::{random_coloring, splitmix64, ColoringSource, KUniformColoring, Ratio, Rule};
pub use colex::{binomial, colex_rank, colex_unrank, KSubsets};
pub use edge::{Color, Edge, Vertex};
pub use structure::{
    canonical_loose_cycle, canonical_loose_path, validate, LooseCycle, LoosePath, Structure, StructureKind,
};
