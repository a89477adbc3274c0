//! Decides which right-angled Artin groups embed in Thompson's group `V`.
//!
//! The graph group of `g` embeds exactly when `g` has no induced subgraph
//! consisting of an edge plus a vertex adjacent to neither endpoint. Such
//! graphs admit a commuting partition, and their groups split as
//! `Z^a x F_{r1} x ... x F_{rk}`.

pub mod classifier;
pub mod cli;
pub mod graph;
pub mod group;
pub mod harness;
pub mod io;
pub mod partition;
pub mod word;

pub use classifier::{find_forbidden_triple, is_nb, recognize_multipartite, ForbiddenTriple};
pub use graph::{Eccentricity, Graph, GraphError, Vertex};
pub use group::{decompose, emit_presentation, verdict, GroupDecomposition, Verdict};
pub use partition::{
    canonical_partition, greedy_partition, validate_partition, CommutingPartition, MinIndex,
    PartitionBuilder, PartitionError, PivotRule, RandomPivot, Violation,
};
pub use word::{
    free_reduce, is_trivial, normal_form, project, Letter, NormalForm, Word, WordProblem,
};
