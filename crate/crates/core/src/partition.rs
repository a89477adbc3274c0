//! Commuting partitions: the greedy construction, the validity checker and
//! witness extraction when construction fails.
//!
//! A commuting partition splits the vertices into `P0` (exactly the
//! eccentricity-one vertices) and nonempty independent parts `P1..Pn` such
//! that any two vertices from different blocks are adjacent.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{find_forbidden_triple, recognize_multipartite, ForbiddenTriple};
use crate::graph::{Graph, Vertex};

/// `P0` plus the parts `P1..Pn`.
///
/// Stored normalized: every block is sorted and parts are ordered by their
/// minimum vertex, so `==` compares unordered block families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CommutingPartition {
    p0: Vec<Vertex>,
    parts: Vec<Vec<Vertex>>,
}

impl CommutingPartition {
    pub fn new(mut p0: Vec<Vertex>, mut parts: Vec<Vec<Vertex>>) -> Self {
        p0.sort_unstable();
        for part in &mut parts {
            part.sort_unstable();
        }
        parts.sort_by_key(|part| part.first().copied());
        CommutingPartition { p0, parts }
    }

    pub fn empty() -> Self {
        CommutingPartition {
            p0: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn p0(&self) -> &[Vertex] {
        &self.p0
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    /// Block `0` is `P0`, block `i > 0` is part `Pi`.
    pub fn block(&self, index: usize) -> &[Vertex] {
        if index == 0 {
            &self.p0
        } else {
            &self.parts[index - 1]
        }
    }

    pub fn block_count(&self) -> usize {
        self.parts.len() + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.p0.len() + self.parts.iter().map(Vec::len).sum::<usize>()
    }

    /// Block index of every vertex, or `None` for vertices not covered.
    pub fn block_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for index in 0..self.block_count() {
            for &v in self.block(index) {
                if v < n {
                    owner[v] = Some(index);
                }
            }
        }
        owner
    }

    /// `P0` together with the parts as an unordered set of sets.
    pub fn family(&self) -> (BTreeSet<Vertex>, BTreeSet<BTreeSet<Vertex>>) {
        (
            self.p0.iter().copied().collect(),
            self.parts
                .iter()
                .map(|part| part.iter().copied().collect())
                .collect(),
        )
    }
}

/// Failure of one of the three commuting-partition conditions.
///
/// Block indices follow [`CommutingPartition::block`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {vertex} is {} but {}", if *.universal { "universal" } else { "not universal" }, if *.universal { "not in P0" } else { "in P0" })]
    P0Mismatch { vertex: Vertex, universal: bool },
    #[error("edge ({u}, {v}) inside part {part}")]
    InternalEdge { u: Vertex, v: Vertex, part: usize },
    #[error("no edge between {u} (block {}) and {v} (block {})", .blocks.0, .blocks.1)]
    MissingCrossEdge {
        u: Vertex,
        v: Vertex,
        blocks: (usize, usize),
    },
}

/// The blocks do not form a partition of the vertex set at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MalformedPartition {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {0} appears in more than one block")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered by any block")]
    Uncovered(Vertex),
    #[error("part {0} is empty")]
    EmptyPart(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition: {0}")]
    Malformed(#[from] MalformedPartition),
    #[error("not a commuting partition: {0}")]
    Violation(#[from] Violation),
}

/// Checks every commuting-partition condition against `g`.
///
/// Scan order is deterministic: the `P0` condition over vertices ascending,
/// then blocks ascending, internal edges of a block before its missing edges
/// to later blocks, vertices ascending within each.
pub fn validate_partition(g: &Graph, p: &CommutingPartition) -> Result<(), PartitionError> {
    check_structure(g.vertex_count(), &p.p0, &p.parts)?;
    match first_violation(g, &p.p0, &p.parts) {
        Some(v) => Err(v.into()),
        None => Ok(()),
    }
}

fn check_structure(
    n: usize,
    p0: &[Vertex],
    parts: &[Vec<Vertex>],
) -> Result<(), MalformedPartition> {
    let mut seen = vec![false; n];
    for (index, block) in std::iter::once(p0)
        .chain(parts.iter().map(Vec::as_slice))
        .enumerate()
    {
        if index > 0 && block.is_empty() {
            return Err(MalformedPartition::EmptyPart(index));
        }
        for &v in block {
            if v >= n {
                return Err(MalformedPartition::OutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(MalformedPartition::Overlap(v));
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(MalformedPartition::Uncovered(v)),
        None => Ok(()),
    }
}

// Blocks must already be structurally sound; parts keep whatever order the
// caller supplies so greedy runs can map violations back to their pivots.
fn first_violation(g: &Graph, p0: &[Vertex], parts: &[Vec<Vertex>]) -> Option<Violation> {
    let mut in_p0 = vec![false; g.vertex_count()];
    for &v in p0 {
        in_p0[v] = true;
    }
    let mut universal = vec![false; g.vertex_count()];
    for v in g.universal_vertices() {
        universal[v] = true;
    }
    if let Some(vertex) = g.vertices().find(|&v| in_p0[v] != universal[v]) {
        return Some(Violation::P0Mismatch {
            vertex,
            universal: universal[vertex],
        });
    }

    let blocks: Vec<Vec<Vertex>> = std::iter::once(p0)
        .chain(parts.iter().map(Vec::as_slice))
        .map(|block| {
            let mut sorted = block.to_vec();
            sorted.sort_unstable();
            sorted
        })
        .collect();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            for (k, &u) in block.iter().enumerate() {
                if let Some(&v) = block[k + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                    return Some(Violation::InternalEdge { u, v, part: i });
                }
            }
        }
        for (j, other) in blocks.iter().enumerate().skip(i + 1) {
            for &u in block {
                if let Some(&v) = other.iter().find(|&&v| !g.has_edge(u, v)) {
                    return Some(Violation::MissingCrossEdge {
                        u,
                        v,
                        blocks: (i, j),
                    });
                }
            }
        }
    }
    None
}

/// Strategy for choosing the next pivot among the unassigned vertices.
pub trait PivotRule {
    /// `remaining` is sorted ascending and never empty. The returned vertex
    /// must be one of its elements.
    fn choose(&mut self, remaining: &[Vertex]) -> Vertex;
}

/// Always picks the smallest unassigned vertex.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinIndex;

impl PivotRule for MinIndex {
    fn choose(&mut self, remaining: &[Vertex]) -> Vertex {
        remaining[0]
    }
}

/// Picks uniformly at random from a seeded generator.
#[derive(Debug, Clone)]
pub struct RandomPivot {
    rng: ChaCha8Rng,
}

impl RandomPivot {
    pub fn seeded(seed: u64) -> Self {
        RandomPivot {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl PivotRule for RandomPivot {
    fn choose(&mut self, remaining: &[Vertex]) -> Vertex {
        remaining[self.rng.gen_range(0..remaining.len())]
    }
}

impl<F: FnMut(&[Vertex]) -> Vertex> PivotRule for F {
    fn choose(&mut self, remaining: &[Vertex]) -> Vertex {
        self(remaining)
    }
}

/// Step-by-step state of the greedy construction.
///
/// After `P0` is fixed, each step picks a pivot `w` from the remaining
/// vertices and carves off the next part: every remaining vertex not adjacent
/// to `w`, which includes `w` itself.
#[derive(Debug, Clone)]
pub struct PartitionBuilder<'g> {
    graph: &'g Graph,
    p0: Vec<Vertex>,
    assigned: Vec<bool>,
    remaining: Vec<Vertex>,
    parts: Vec<Vec<Vertex>>,
    pivots: Vec<Vertex>,
}

impl<'g> PartitionBuilder<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let p0 = graph.universal_vertices();
        let mut assigned = vec![false; graph.vertex_count()];
        for &v in &p0 {
            assigned[v] = true;
        }
        let remaining = graph.vertices().filter(|&v| !assigned[v]).collect();
        PartitionBuilder {
            graph,
            p0,
            assigned,
            remaining,
            parts: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn p0(&self) -> &[Vertex] {
        &self.p0
    }

    /// Membership flags for the union of blocks built so far.
    pub fn assigned(&self) -> &[bool] {
        &self.assigned
    }

    pub fn remaining(&self) -> &[Vertex] {
        &self.remaining
    }

    /// Parts in discovery order; part `k` was generated by `pivots()[k]`.
    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn pivots(&self) -> &[Vertex] {
        &self.pivots
    }

    pub fn is_done(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Carves off one part. Returns `None` once every vertex is assigned.
    pub fn step(&mut self, rule: &mut impl PivotRule) -> Option<&[Vertex]> {
        if self.remaining.is_empty() {
            return None;
        }
        let pivot = rule.choose(&self.remaining);
        assert!(
            self.remaining.binary_search(&pivot).is_ok(),
            "pivot rule returned {pivot}, which is not an unassigned vertex"
        );
        let g = self.graph;
        let (part, rest): (Vec<Vertex>, Vec<Vertex>) = self
            .remaining
            .iter()
            .partition(|&&v| v == pivot || !g.has_edge(pivot, v));
        for &v in &part {
            self.assigned[v] = true;
        }
        self.remaining = rest;
        self.pivots.push(pivot);
        self.parts.push(part);
        self.parts.last().map(Vec::as_slice)
    }

    pub fn run(mut self, rule: &mut impl PivotRule) -> GreedyRun {
        while self.step(rule).is_some() {}
        GreedyRun {
            p0: self.p0,
            parts: self.parts,
            pivots: self.pivots,
        }
    }
}

/// Completed greedy construction, parts still in discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRun {
    pub p0: Vec<Vertex>,
    pub parts: Vec<Vec<Vertex>>,
    pub pivots: Vec<Vertex>,
}

impl GreedyRun {
    /// Validates the run. On failure, reads a witness off the violated
    /// condition using the pivot that generated the offending part.
    pub fn into_result(self, g: &Graph) -> Result<CommutingPartition, ForbiddenTriple> {
        let Some(violation) = first_violation(g, &self.p0, &self.parts) else {
            return Ok(CommutingPartition::new(self.p0, self.parts));
        };
        let structured = match violation {
            // Both endpoints avoid the pivot, which is adjacent to neither.
            Violation::InternalEdge { u, v, part } => {
                ForbiddenTriple::new(g, u, v, self.pivots[part - 1])
            }
            // u sits in the earlier part and missed its pivot; v was left out
            // of that part, so it is adjacent to the pivot.
            Violation::MissingCrossEdge {
                u,
                v,
                blocks: (i, _),
            } if i > 0 => ForbiddenTriple::new(g, v, self.pivots[i - 1], u),
            _ => None,
        };
        Err(structured
            .or_else(|| find_forbidden_triple(g))
            .expect("a failed greedy partition always has a forbidden triple"))
    }
}

/// Runs the greedy construction and validates the result.
pub fn greedy_partition(
    g: &Graph,
    rule: &mut impl PivotRule,
) -> Result<CommutingPartition, ForbiddenTriple> {
    PartitionBuilder::new(g).run(rule).into_result(g)
}

/// Partition from the complement-component recognizer, or the
/// lexicographically least witness.
pub fn canonical_partition(g: &Graph) -> Result<CommutingPartition, ForbiddenTriple> {
    recognize_multipartite(g).ok_or_else(|| {
        find_forbidden_triple(g).expect("recognizer rejected a graph with no forbidden triple")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_1a() -> Graph {
        Graph::new(3, [(0, 1)]).unwrap()
    }

    fn cp(p0: &[Vertex], parts: &[&[Vertex]]) -> CommutingPartition {
        CommutingPartition::new(p0.to_vec(), parts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            greedy_partition(&Graph::path(3), &mut MinIndex),
            Ok(cp(&[1], &[&[0, 2]]))
        );
        assert_eq!(
            greedy_partition(&Graph::complete(3), &mut MinIndex),
            Ok(cp(&[0, 1, 2], &[]))
        );
        assert_eq!(
            greedy_partition(&figure_1a(), &mut MinIndex),
            Err(ForbiddenTriple { a: 0, b: 1, c: 2 })
        );
        assert_eq!(
            greedy_partition(&Graph::empty(0), &mut MinIndex),
            Ok(CommutingPartition::empty())
        );
        assert_eq!(
            greedy_partition(&Graph::empty(1), &mut MinIndex),
            Ok(cp(&[], &[&[0]]))
        );
    }

    #[test]
    fn figure_1a_run_fails_on_missing_cross_edge() {
        let g = figure_1a();
        let run = PartitionBuilder::new(&g).run(&mut MinIndex);
        assert_eq!(run.parts, vec![vec![0, 2], vec![1]]);
        assert_eq!(run.pivots, vec![0, 1]);
        assert_eq!(
            first_violation(&g, &run.p0, &run.parts),
            Some(Violation::MissingCrossEdge {
                u: 2,
                v: 1,
                blocks: (1, 2)
            })
        );
    }

    #[test]
    fn internal_edge_yields_pivot_witness() {
        // Pivot 0 sees neither 2 nor 3, but 2 - 3 is an edge.
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let run = PartitionBuilder::new(&g).run(&mut MinIndex);
        assert_eq!(run.parts[0], vec![0, 2, 3]);
        assert_eq!(
            run.into_result(&g),
            Err(ForbiddenTriple { a: 2, b: 3, c: 0 })
        );
    }

    #[test]
    fn validate_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(
            validate_partition(&c4, &cp(&[], &[&[0, 2], &[1, 3]])),
            Ok(())
        );
        assert_eq!(
            validate_partition(&c4, &cp(&[], &[&[0, 1], &[2, 3]])),
            Err(PartitionError::Violation(Violation::InternalEdge {
                u: 0,
                v: 1,
                part: 1
            }))
        );
        assert_eq!(
            validate_partition(&Graph::complete(3), &cp(&[0, 1, 2], &[])),
            Ok(())
        );
    }

    #[test]
    fn validate_reports_p0_mismatches() {
        let k3 = Graph::complete(3);
        assert_eq!(
            validate_partition(&k3, &cp(&[0, 1], &[&[2]])),
            Err(Violation::P0Mismatch {
                vertex: 2,
                universal: true
            }
            .into())
        );
        assert_eq!(
            validate_partition(&Graph::path(3), &cp(&[0, 1], &[&[2]])),
            Err(Violation::P0Mismatch {
                vertex: 0,
                universal: false
            }
            .into())
        );
    }

    #[test]
    fn validate_rejects_malformed_blocks() {
        let g = Graph::cycle(4);
        assert_eq!(
            validate_partition(&g, &cp(&[], &[&[0, 2], &[1]])),
            Err(MalformedPartition::Uncovered(3).into())
        );
        assert_eq!(
            validate_partition(&g, &cp(&[], &[&[0, 2], &[1, 2, 3]])),
            Err(MalformedPartition::Overlap(2).into())
        );
        assert_eq!(
            validate_partition(&g, &cp(&[], &[&[0, 2], &[1, 3, 4]])),
            Err(MalformedPartition::OutOfRange { vertex: 4, n: 4 }.into())
        );
        assert_eq!(
            validate_partition(&g, &cp(&[], &[&[], &[0, 2], &[1, 3]])),
            Err(MalformedPartition::EmptyPart(1).into())
        );
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_partition(&Graph::cycle(4)),
            Ok(cp(&[], &[&[0, 2], &[1, 3]]))
        );
        assert_eq!(
            canonical_partition(&Graph::cycle(5)),
            Err(ForbiddenTriple { a: 0, b: 1, c: 3 })
        );
        assert_eq!(canonical_partition(&Graph::empty(1)), Ok(cp(&[], &[&[0]])));
    }

    #[test]
    fn builder_state_tracks_assignment() {
        let g = Graph::new(
            5,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
            ],
        )
        .unwrap();
        let mut builder = PartitionBuilder::new(&g);
        assert_eq!(builder.p0(), &[0]);
        assert_eq!(builder.remaining(), &[1, 2, 3, 4]);
        let mut pick_last = |rem: &[Vertex]| *rem.last().unwrap();
        assert_eq!(builder.step(&mut pick_last), Some(&[3, 4][..]));
        assert_eq!(builder.remaining(), &[1, 2]);
        assert_eq!(builder.assigned(), &[true, false, false, true, true]);
        assert_eq!(builder.step(&mut pick_last), Some(&[1, 2][..]));
        assert!(builder.is_done());
        assert_eq!(builder.pivots(), &[4, 2]);
        assert_eq!(builder.step(&mut pick_last), None);
    }

    #[test]
    #[should_panic(expected = "not an unassigned vertex")]
    fn builder_rejects_foreign_pivot() {
        let g = Graph::empty(3);
        let mut builder = PartitionBuilder::new(&g);
        builder.step(&mut |_: &[Vertex]| 7);
    }
}
