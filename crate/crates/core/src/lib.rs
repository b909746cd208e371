//! Loose paths and cycles in k-uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`core`] holds edges, colex ranking, loose structures and colorings.
//! * [`detect`] is the brute-force oracle: monochromatic structure search and
//!   exhaustive / randomized Ramsey drivers.
//! * [`extremal`] builds split colorings with pigeonhole certificates.
//! * [`connector`] types connector edges between two blue cycles and splices
//!   the cycles together.
//! * [`engine`] runs the constructive lemmas, each returning a red structure or
//!   a blue cycle witness.
//! * [`harness`] has the conjectured formulas, CNF export and JSON reports.
//!
//! Vertex ids are 0-based. Where documentation mentions `v_1, v_2, ...` it
//! means `vertex_order[0], vertex_order[1], ...` of the structure at hand.

pub mod connector;
pub mod core;
pub mod detect;
pub mod engine;
mod error;
pub mod extremal;
pub mod harness;

pub use crate::core::{
    binomial, canonical_loose_cycle, canonical_loose_path, colex_rank, colex_unrank, random_coloring,
    validate, Color, ColoringSource, Edge, KUniformColoring, LooseCycle, LoosePath, Rule, Structure,
    StructureKind, Vertex,
};
pub use error::{Error, InvalidStructure, Result};
