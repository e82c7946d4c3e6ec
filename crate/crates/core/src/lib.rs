//! Exact Potts model partition function (multivariate Tutte polynomial)
//!
//! `Z_G(q, v) = sum over edge subsets A of q^K(A) * prod_{e in A} v_e`
//!
//! on series-parallel multigraphs, computed in time linear in the graph size.
//! The graph is decomposed into an SPQ tree by repeatedly suppressing degree-2
//! vertices; the tree is then folded bottom-up with the parallel and series
//! reduction rules into a single equivalent edge on `K2`.
//!
//! The exact path uses arbitrary-precision [`Rational`]s throughout. An `f64`
//! path through the same code exists for benchmarking.

pub mod cli;
pub mod error;
pub mod evaluator;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod reduction;
pub mod sptree;

pub use error::{Error, Result};
pub use evaluator::{
    chromatic_polynomial, effective_weight, effective_weight_with, evaluate, partition_polynomial,
    partition_polynomial_with, EvalRequest, PolyOptions,
};
pub use generator::{random_sp_graph, GeneratorSpec};
pub use graph::{connected_components, EdgeRecord, WeightedMultigraph};
pub use io::{parse_graph, serialize_graph};
pub use oracle::{brute_force_z, brute_force_z_f64, count_proper_colorings, subset_expansion};
pub use poly::PolyQ;
pub use rational::{Rational, Scalar};
pub use reduction::{necklace_weight, parallel_weight, series_weight, EffectiveEdge, NecklaceSpec};
pub use sptree::{
    build_sp_tree, build_sp_tree_with, validate_tree, Children, NodeId, NodeKind, SpNode, SpTree, WorklistOrder,
};
