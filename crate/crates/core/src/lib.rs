//! Verification toolkit for Hajós' conjecture on small Eulerian graphs.
//!
//! An Eulerian graph of order `n` should decompose into at most ⌊(n−1)/2⌋
//! edge-disjoint cycles. The crate enumerates the candidate graphs, discards
//! those that cannot be minimum counterexamples, and decides the rest with
//! randomized heuristics raced against an exact search. Integer programs for
//! external MILP solvers can be emitted alongside.

pub mod biconnected;
pub mod cancel;
pub mod canon;
pub mod exact;
pub mod filter;
pub mod flow;
pub mod generator;
pub mod graph;
pub mod graph6;
pub mod heuristics;
pub mod ip;
pub mod pipeline;

pub use biconnected::biconnected_components;
pub use cancel::CancelToken;
pub use canon::canonical_form;
pub use flow::two_vertex_disjoint_paths;
pub use graph::{
    hajos_bound, validate_cycle, validate_decomposition, Cycle, Decomposition, DecompositionViolation, EdgeSet, Graph,
    GraphError,
};
pub use graph6::{parse_graph6, to_graph6};
