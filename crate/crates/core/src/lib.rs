//! Directed cycle families for a host cycle with tree bridges.
//!
//! Given a cycle `L` in a graph whose `L`-bridges are pairwise disjoint trees
//! with a tree-shaped overlap graph, [`construct`] builds a family of directed
//! cycles covering every host edge exactly twice and every bridge edge at least
//! four times, with the parity and type conditions checked by
//! [`verify_feasible`]. The remaining modules supply the auxiliary digraphs,
//! the tree path covers, brute-force oracles, a seeded instance generator and
//! JSON/DOT interchange.

pub mod aux;
pub mod bridges;
pub mod document;
pub mod dot;
pub mod family;
pub mod generate;
pub mod graph;
pub mod tree_cover;
pub mod verify;

pub use aux::{build_aux, compositions, min_undirected_cut, AuxDigraph, AuxError, CutMode, Partition};
pub use bridges::{
    decompose_bridges, lambda_oracle, overlap_graph, overlaps, BridgeError, BridgeTree, Instance, OverlapGraph,
    RawBridge,
};
pub use family::{construct, construct_traced, ConstructError, ConstructStats, CycleFamily};
pub use graph::{Arc, Dicycle, Direction, Edge, GraphError, HostCycle, TypeTag, VertexId};
pub use tree_cover::{coverage, path_family, tree_dipath, Labeling, TreeCoverError};
pub use verify::{certify_longest, longest_cycle_len, verify_feasible, verify_voss, FeasibilityReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/auxiliary.md")]
    mod auxiliary {}
    #[doc = include_str!("../../../book/src/tree-cover.md")]
    mod tree_cover {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/generation.md")]
    mod generation {}
}
