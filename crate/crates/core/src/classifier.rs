//! Membership in the class of graphs with no induced "edge plus isolated
//! vertex" pattern.
//!
//! Two independent routes decide the same class: a brute-force witness
//! search over triples, and a structural recognizer that checks whether the
//! complement is a disjoint union of cliques.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::partition::CommutingPartition;

/// Vertices `a < b` joined by an edge and a third vertex `c` adjacent to neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenTriple {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
}

impl ForbiddenTriple {
    /// Normalizes the edge endpoints and returns the triple only if it is a
    /// genuine witness in `g`.
    pub fn new(g: &Graph, u: Vertex, v: Vertex, c: Vertex) -> Option<Self> {
        let triple = ForbiddenTriple {
            a: u.min(v),
            b: u.max(v),
            c,
        };
        triple.is_valid_for(g).then_some(triple)
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let ForbiddenTriple { a, b, c } = *self;
        a < b
            && b < n
            && c < n
            && c != a
            && c != b
            && g.has_edge(a, b)
            && !g.has_edge(a, c)
            && !g.has_edge(b, c)
    }
}

impl fmt::Display for ForbiddenTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Lexicographically least witness: edges `(a, b)` in order, then `c` ascending.
pub fn find_forbidden_triple(g: &Graph) -> Option<ForbiddenTriple> {
    g.edges().find_map(|(a, b)| {
        g.vertices()
            .find(|&c| c != a && c != b && !g.has_edge(a, c) && !g.has_edge(b, c))
            .map(|c| ForbiddenTriple { a, b, c })
    })
}

pub fn is_nb(g: &Graph) -> bool {
    find_forbidden_triple(g).is_none()
}

/// Recognizes complete multipartite graphs (with universal vertices split off)
/// through the complement's component structure.
///
/// Returns the canonical commuting partition when every component of the
/// complement is a clique there, and `None` otherwise.
pub fn recognize_multipartite(g: &Graph) -> Option<CommutingPartition> {
    let n = g.vertex_count();
    let complement = g.complement();
    let mut p0 = Vec::new();
    let mut parts = Vec::new();
    for component in complement.connected_components() {
        if !complement.is_clique(&component) {
            return None;
        }
        // A singleton complement component is adjacent to everything else in
        // g, which makes it universal once n >= 2.
        if component.len() == 1 && n >= 2 {
            p0.push(component[0]);
        } else {
            parts.push(component);
        }
    }
    Some(CommutingPartition::new(p0, parts))
}
