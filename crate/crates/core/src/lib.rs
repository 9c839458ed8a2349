//! Spectral sparsification of weighted undirected graphs.
//!
//! The pipeline: partition a graph into pieces certified to lie inside
//! high-conductance subgraphs, sparsify each piece by degree-weighted edge
//! sampling with 1/p reweighting, recurse on the boundary, and lift the
//! construction to arbitrary weights through binary decomposition,
//! truncation into weight-1 level graphs, and contraction/pullback against
//! much heavier prefix levels.
//!
//! Alongside the pipeline the crate carries desk-scale verification oracles:
//! exact conductance and sparsest-cut enumeration, dense eigensolves for the
//! Laplacian pencil that measures approximation quality, and Loewner-order
//! checks.

// Validations use `!(x > 0.0)` so NaN is rejected along with the sign; the
// dense kernels index with plain loops.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod cuts;
pub mod eig;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod partition;
pub mod rng;
pub mod sampling;
pub mod sparsify;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{
    boundary_edges, connected_components, Decomposition, DegreeContext, Edge, LoopedSubgraph,
    UnionFind, VertexId, VertexSet, WeightedGraph,
};
