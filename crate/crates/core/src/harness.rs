//! Exhaustive and randomized cross-checks of the classifier, the greedy
//! partitioner and the complement recognizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{find_forbidden_triple, recognize_multipartite};
use crate::graph::{Graph, Vertex};
use crate::io::emit_graph6;
use crate::partition::{greedy_partition, validate_partition, CommutingPartition, MinIndex};

/// Largest vertex count accepted for exhaustive enumeration.
pub const MAX_ENUMERATION_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("exhaustive enumeration supports at most {MAX_ENUMERATION_N} vertices, got {0}")]
    TooLarge(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
}

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Number of labeled simple graphs on `n` vertices.
pub fn graph_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Graph whose edge set is the bit pattern of `code`; bit `i` is the `i`-th
/// pair `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut bits = code;
    let mut edge = vec![false; n * n];
    for (u, v) in pairs(n) {
        if bits & 1 == 1 {
            edge[u * n + v] = true;
        }
        bits >>= 1;
    }
    Graph::from_fn(n, |u, v| edge[u * n + v])
}

/// Every labeled graph on `n` vertices, in increasing code order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, HarnessError> {
    if n > MAX_ENUMERATION_N {
        return Err(HarnessError::TooLarge(n));
    }
    Ok((0..graph_count(n)).map(move |code| graph_from_code(n, code)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub total_graphs: u64,
    /// Graphs with no forbidden triple.
    pub nb_count: u64,
    /// Graphs on which the greedy construction succeeds.
    pub gp_count: u64,
    /// Graphs accepted by the complement recognizer.
    pub recognized_count: u64,
    /// graph6 codes of graphs where the three routes disagree or a result
    /// fails its own validity check.
    pub mismatches: Vec<String>,
}

#[derive(Default)]
struct Tally {
    nb: u64,
    gp: u64,
    recognized: u64,
    mismatches: Vec<(u64, String)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.nb += other.nb;
        self.gp += other.gp;
        self.recognized += other.recognized;
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Outcome of running all three routes on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub nb: bool,
    pub gp: bool,
    pub recognized: bool,
    /// All three agree and every partition or witness produced is valid.
    pub consistent: bool,
}

pub fn check_graph(g: &Graph) -> Agreement {
    let triple = find_forbidden_triple(g);
    let greedy = greedy_partition(g, &mut MinIndex);
    let recognized = recognize_multipartite(g);

    let mut consistent = triple.is_none_or(|t| t.is_valid_for(g));
    match &greedy {
        Ok(p) => consistent &= validate_partition(g, p).is_ok(),
        Err(t) => consistent &= t.is_valid_for(g),
    }
    if let Some(p) = &recognized {
        consistent &= validate_partition(g, p).is_ok();
        if let Ok(q) = &greedy {
            consistent &= p == q;
        }
    }
    let nb = triple.is_none();
    let gp = greedy.is_ok();
    let rec = recognized.is_some();
    Agreement {
        nb,
        gp,
        recognized: rec,
        consistent: consistent && nb == gp && nb == rec,
    }
}

/// Runs every route on every labeled graph with `n` vertices. Shards run in
/// parallel; counts are summed and mismatches sorted by code, so the report
/// does not depend on scheduling.
pub fn cross_check(n: usize) -> Result<CrossCheckReport, HarnessError> {
    if n > MAX_ENUMERATION_N {
        return Err(HarnessError::TooLarge(n));
    }
    let total = graph_count(n);
    let tally = (0..total)
        .into_par_iter()
        .fold(Tally::default, |mut tally, code| {
            let g = graph_from_code(n, code);
            let outcome = check_graph(&g);
            tally.nb += u64::from(outcome.nb);
            tally.gp += u64::from(outcome.gp);
            tally.recognized += u64::from(outcome.recognized);
            if !outcome.consistent {
                tally.mismatches.push((code, emit_graph6(&g)));
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    let mut mismatches = tally.mismatches;
    mismatches.sort();
    Ok(CrossCheckReport {
        n,
        total_graphs: total,
        nb_count: tally.nb,
        gp_count: tally.gp,
        recognized_count: tally.recognized,
        mismatches: mismatches.into_iter().map(|(_, g6)| g6).collect(),
    })
}

/// Erdős–Rényi graph: each pair `(u, v)`, `u < v`, visited in lexicographic
/// order, is an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, HarnessError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(HarnessError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Graph::from_fn(n, |_, _| rng.gen_bool(p)))
}

/// A `P0` set plus independent parts, used to build graphs that are
/// guaranteed to have a commuting partition.
///
/// Unlike a [`CommutingPartition`], `p0` need not be the full set of
/// universal vertices: singleton parts are allowed and become universal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    pub n: usize,
    pub p0: Vec<Vertex>,
    pub parts: Vec<Vec<Vertex>>,
}

impl BlockFamily {
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let p0_bias: f64 = rng.gen_range(0.0..0.5);
        let part_slots = rng.gen_range(1..=n.max(1));
        let mut p0 = Vec::new();
        let mut parts = vec![Vec::new(); part_slots];
        for v in 0..n {
            if rng.gen_bool(p0_bias) {
                p0.push(v);
            } else {
                parts[rng.gen_range(0..part_slots)].push(v);
            }
        }
        parts.retain(|part| !part.is_empty());
        BlockFamily { n, p0, parts }
    }

    fn block_ids(&self) -> Vec<Option<usize>> {
        let mut id = vec![None; self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                id[v] = Some(i);
            }
        }
        id
    }

    /// Every pair is an edge except pairs inside the same part.
    pub fn graph(&self) -> Graph {
        let id = self.block_ids();
        Graph::from_fn(self.n, |u, v| id[u].is_none() || id[u] != id[v])
    }

    /// The commuting partition of [`BlockFamily::graph`]: singleton parts
    /// move into `P0` once there are at least two vertices, and a lone
    /// vertex always forms a single part.
    pub fn expected_partition(&self) -> CommutingPartition {
        if self.n == 1 {
            return CommutingPartition::new(Vec::new(), vec![vec![0]]);
        }
        let mut p0 = self.p0.clone();
        let mut parts = Vec::new();
        for part in &self.parts {
            if part.len() == 1 {
                p0.push(part[0]);
            } else {
                parts.push(part.clone());
            }
        }
        CommutingPartition::new(p0, parts)
    }
}

pub fn random_block_family(n: usize, seed: u64) -> BlockFamily {
    BlockFamily::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random graph with a commuting partition, built from a random
/// [`BlockFamily`].
pub fn random_nb_graph(n: usize, seed: u64) -> Graph {
    random_block_family(n, seed).graph()
}
