//! Construction of (n,k)-star interconnection networks, explicit h-super
//! vertex cuts, and an exact certified oracle for h-super connectivity.

pub mod bitset;
pub mod cache;
pub mod cli;
pub mod error;
pub mod fault;
pub mod graph;
pub mod harness;
pub mod permutation;
pub mod report;
pub mod star;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use fault::{
    construct_cut, cut_projection, default_cut, kappa_super_exact, kappa_super_upper, theorem_value, Budget,
    CutCertificate, SearchOptions, SearchResult,
};
pub use graph::{components, is_h_cut, shortest_cycle_through_edge, vertex_connectivity, Graph, HCutVerdict};
pub use permutation::KPermutation;
pub use star::{CliqueId, EdgeKind, StarGraph, SubgraphId};
