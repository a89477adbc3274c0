//! Finite simple graphs with dense adjacency.
//!
//! Vertices are the integers `0..n`. A [`Graph`] is immutable once built:
//! loops are rejected, parallel edges collapse, and `(u, v)` is the same
//! edge as `(v, u)`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Dense vertex index.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// Greatest breadth-first distance from a vertex to any other vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eccentricity {
    Finite(usize),
    /// Some vertex lies in another component.
    Unreachable,
}

impl Eccentricity {
    pub fn is_one(self) -> bool {
        self == Eccentricity::Finite(1)
    }
}

impl fmt::Display for Eccentricity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eccentricity::Finite(k) => write!(f, "{k}"),
            Eccentricity::Unreachable => f.write_str("unreachable"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    // row-major n x n, symmetric, false on the diagonal
    adj: Vec<bool>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        g
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Builds a graph from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut is_edge: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if is_edge(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    fn set(&mut self, u: Vertex, v: Vertex) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// O(1) pair query. Panics if either vertex is out of range.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(u, &b)| if b { Some(u) } else { None })
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.has_edge(u, v).then_some((u, v)))
        })
    }

    pub fn eccentricity(&self, v: Vertex) -> Eccentricity {
        assert!(v < self.n, "vertex out of range");
        let dist = self.bfs_distances(v);
        let mut ecc = 0;
        for d in dist {
            match d {
                Some(d) => ecc = ecc.max(d),
                None => return Eccentricity::Unreachable,
            }
        }
        Eccentricity::Finite(ecc)
    }

    fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices of eccentricity one, ascending.
    pub fn universal_vertices(&self) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.has_unit_eccentricity(v))
            .collect()
    }

    // Breadth-first search truncated at depth one: eccentricity is 1 exactly
    // when the first layer already holds every other vertex.
    fn has_unit_eccentricity(&self, v: Vertex) -> bool {
        self.n >= 2 && self.degree(v) == self.n - 1
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Components, each sorted, ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Graph {
        Graph::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_isolated() -> Graph {
        Graph::empty(2)
    }

    #[test]
    fn construction_rules() {
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(Graph::new(3, []).unwrap(), Graph::empty(3));
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn eccentricity_examples() {
        assert_eq!(Graph::complete(3).eccentricity(0), Eccentricity::Finite(1));
        assert_eq!(Graph::path(3).eccentricity(0), Eccentricity::Finite(2));
        assert_eq!(Graph::path(3).eccentricity(1), Eccentricity::Finite(1));
        assert_eq!(two_isolated().eccentricity(0), Eccentricity::Unreachable);
        assert_eq!(Graph::empty(1).eccentricity(0), Eccentricity::Finite(0));
    }

    #[test]
    fn universal_vertex_examples() {
        assert_eq!(Graph::complete(3).universal_vertices(), vec![0, 1, 2]);
        assert_eq!(Graph::path(3).universal_vertices(), vec![1]);
        assert!(Graph::empty(3).universal_vertices().is_empty());
        assert!(Graph::empty(1).universal_vertices().is_empty());
        assert!(Graph::empty(0).universal_vertices().is_empty());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(2).complement(), Graph::complete(2));
        assert_eq!(
            Graph::path(3).complement(),
            Graph::new(3, [(0, 2)]).unwrap()
        );
    }

    #[test]
    fn component_examples() {
        assert_eq!(
            Graph::complete(3).connected_components(),
            vec![vec![0, 1, 2]]
        );
        assert_eq!(
            two_isolated().connected_components(),
            vec![vec![0], vec![1]]
        );
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn clique_examples() {
        assert!(Graph::complete(3).is_clique(&[0, 1, 2]));
        assert!(!Graph::path(3).is_clique(&[0, 2]));
        assert!(Graph::path(3).is_clique(&[]));
        assert!(Graph::path(3).is_clique(&[2]));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c4 = Graph::cycle(4);
        let sub = c4.induced_subgraph(&[1, 2, 3]);
        assert_eq!(sub, Graph::path(3));
    }
}
