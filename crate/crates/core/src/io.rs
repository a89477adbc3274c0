//! Graph file formats and machine-readable result records.
//!
//! Edge-list format:
//!
//! ```text
//! # comment
//! n 3
//! e 0 1
//! ```
//!
//! Labels are whitespace-free tokens. When every label is an integer below
//! `n` the labels are the vertex indices; otherwise vertices are numbered in
//! order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::classifier::ForbiddenTriple;
use crate::graph::{Graph, Vertex};
use crate::group::Verdict;
use crate::partition::CommutingPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line \"n <count>\"")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("invalid vertex count {0:?}")]
    BadCount(String),
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("expected \"e <u> <v>\"")]
    MalformedEdge,
    #[error("loop edge at {0:?}")]
    Loop(String),
    #[error("more than {0} distinct vertex labels")]
    CountMismatch(usize),
}

/// Bijection between vertex indices and user-facing labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
}

impl LabelMap {
    /// Decimal indices `"0"`, `"1"`, ...
    pub fn numeric(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        Self::from_labels(labels).expect("decimal labels are unique")
    }

    /// Fails on empty or duplicate labels.
    pub fn from_labels(labels: Vec<String>) -> Option<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (v, label) in labels.iter().enumerate() {
            if label.is_empty() || index.insert(label.clone(), v).is_some() {
                return None;
            }
        }
        Some(LabelMap { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn is_numeric(&self) -> bool {
        self.labels
            .iter()
            .enumerate()
            .all(|(v, l)| *l == v.to_string())
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_edge_list(text: &str) -> Result<(Graph, LabelMap), ParseError> {
    let mut n = None;
    let mut edges: Vec<(usize, &str, &str)> = Vec::new();
    for (line, tokens) in significant_lines(text) {
        let err = |kind| ParseError { line, kind };
        match tokens[0] {
            "n" if n.is_some() => return Err(err(ParseErrorKind::DuplicateHeader)),
            "n" => {
                if tokens.len() != 2 {
                    return Err(err(ParseErrorKind::BadCount(tokens[1..].join(" "))));
                }
                let count = tokens[1]
                    .parse::<usize>()
                    .map_err(|_| err(ParseErrorKind::BadCount(tokens[1].to_string())))?;
                n = Some(count);
            }
            _ if n.is_none() => return Err(err(ParseErrorKind::MissingHeader)),
            "e" => {
                if tokens.len() != 3 {
                    return Err(err(ParseErrorKind::MalformedEdge));
                }
                if tokens[1] == tokens[2] {
                    return Err(err(ParseErrorKind::Loop(tokens[1].to_string())));
                }
                edges.push((line, tokens[1], tokens[2]));
            }
            other => return Err(err(ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    let Some(n) = n else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::MissingHeader,
        });
    };

    let numeric = edges.iter().all(|&(_, u, v)| {
        [u, v].iter().all(|t| {
            t.parse::<usize>()
                .is_ok_and(|i| i < n && i.to_string() == *t)
        })
    });
    let mut pairs = Vec::with_capacity(edges.len());
    let labels = if numeric {
        for &(_, u, v) in &edges {
            pairs.push((u.parse().unwrap(), v.parse().unwrap()));
        }
        LabelMap::numeric(n)
    } else {
        let mut order: Vec<String> = Vec::new();
        let mut index: HashMap<&str, Vertex> = HashMap::new();
        for &(line, u, v) in &edges {
            let mut lookup = |t| -> Result<Vertex, ParseError> {
                if let Some(&i) = index.get(t) {
                    return Ok(i);
                }
                if order.len() == n {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::CountMismatch(n),
                    });
                }
                index.insert(t, order.len());
                order.push(t.to_string());
                Ok(order.len() - 1)
            };
            let a = lookup(u)?;
            let b = lookup(v)?;
            pairs.push((a, b));
        }
        // vertices never mentioned keep their decimal index, prefixed until unique
        for v in order.len()..n {
            let mut label = v.to_string();
            while index.contains_key(label.as_str()) || order.contains(&label) {
                label.insert(0, '_');
            }
            order.push(label);
        }
        LabelMap::from_labels(order).expect("labels are unique by construction")
    };
    let graph = Graph::new(n, pairs).expect("endpoints validated during parsing");
    Ok((graph, labels))
}

pub fn emit_edge_list(g: &Graph, labels: Option<&LabelMap>) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        match labels {
            Some(map) => writeln!(out, "e {} {}", map.label(u), map.label(v)),
            None => writeln!(out, "e {u} {v}"),
        }
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("only graphs with at most 62 vertices are supported")]
    TooLarge,
    #[error("expected {expected} bytes of adjacency data, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    Padding,
}

const GRAPH6_MAX_N: usize = 62;

/// Upper-triangle pairs in graph6 order: column by column,
/// `(0,1), (0,2), (1,2), (0,3), ...`.
fn graph6_pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(
        n <= GRAPH6_MAX_N,
        "graph6 output supports at most 62 vertices"
    );
    let mut out = vec![n as u8 + 63];
    let mut group = 0u8;
    let mut filled = 0;
    for (i, j) in graph6_pairs(n) {
        group = group << 1 | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push(group + 63);
            group = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (&header, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::OutOfRange { offset, byte });
        }
    }
    let n = (header - 63) as usize;
    if n > GRAPH6_MAX_N {
        return Err(Graph6Error::TooLarge);
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: body.len(),
        });
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bit_count..expected * 6).any(bit) {
        return Err(Graph6Error::Padding);
    }
    let mut edges = Vec::new();
    for (k, (i, j)) in graph6_pairs(n).enumerate() {
        if bit(k) {
            edges.push((i, j));
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 pairs are in range and loop-free"))
}

const DOT_COLORS: [&str; 8] = [
    "lightblue",
    "palegreen",
    "lightsalmon",
    "plum",
    "khaki",
    "lightpink",
    "paleturquoise",
    "wheat",
];

/// Graphviz description. With a partition, `P0` and each part become
/// clusters; `P0` is drawn in gray, parts cycle through a palette.
pub fn emit_dot(
    g: &Graph,
    labels: Option<&LabelMap>,
    partition: Option<&CommutingPartition>,
) -> String {
    let label = |v: Vertex| match labels {
        Some(map) => map.label(v).replace('\\', "\\\\").replace('"', "\\\""),
        None => v.to_string(),
    };
    let mut out = String::from("graph G {\n");
    match partition {
        Some(p) => {
            if !p.p0().is_empty() {
                out.push_str("  subgraph cluster_p0 {\n    label=\"P0\";\n    style=filled;\n    color=lightgray;\n");
                for &v in p.p0() {
                    writeln!(out, "    {v} [label=\"{}\"];", label(v)).unwrap();
                }
                out.push_str("  }\n");
            }
            for (i, part) in p.parts().iter().enumerate() {
                writeln!(
                    out,
                    "  subgraph cluster_p{} {{\n    label=\"P{}\";\n    style=filled;\n    color={};",
                    i + 1,
                    i + 1,
                    DOT_COLORS[i % DOT_COLORS.len()]
                )
                .unwrap();
                for &v in part {
                    writeln!(out, "    {v} [label=\"{}\"];", label(v)).unwrap();
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for v in g.vertices() {
                writeln!(out, "  {v} [label=\"{}\"];", label(v)).unwrap();
            }
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub edge: [Vertex; 2],
    pub nonadjacent: Vertex,
}

impl From<ForbiddenTriple> for WitnessRecord {
    fn from(t: ForbiddenTriple) -> Self {
        WitnessRecord {
            edge: [t.a, t.b],
            nonadjacent: t.c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRecord {
    pub abelian_rank: usize,
    pub free_ranks: Vec<usize>,
}

/// JSON record printed by `classify --json`. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyRecord {
    pub embeddable: bool,
    pub witness: Option<WitnessRecord>,
    pub partition: Option<CommutingPartition>,
    pub group: Option<GroupRecord>,
    pub canonical: Option<String>,
}

impl From<&Verdict> for ClassifyRecord {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Embeddable { partition, group } => ClassifyRecord {
                embeddable: true,
                witness: None,
                partition: Some(partition.clone()),
                group: Some(GroupRecord {
                    abelian_rank: group.abelian_rank,
                    free_ranks: group.free_ranks.clone(),
                }),
                canonical: Some(group.to_string()),
            },
            Verdict::NotEmbeddable { witness } => ClassifyRecord {
                embeddable: false,
                witness: Some((*witness).into()),
                partition: None,
                group: None,
                canonical: None,
            },
        }
    }
}

pub fn classify_json(v: &Verdict) -> String {
    serde_json::to_string(&ClassifyRecord::from(v)).expect("record serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::verdict;

    fn kind(text: &str) -> (usize, ParseErrorKind) {
        let e = parse_edge_list(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn edge_list_examples() {
        let (g, labels) = parse_edge_list("n 3\ne 0 1").unwrap();
        assert_eq!(g, Graph::new(3, [(0, 1)]).unwrap());
        assert!(labels.is_numeric());
        assert_eq!(parse_edge_list("n 2").unwrap().0, Graph::empty(2));
        assert_eq!(kind("n 2\ne 0 0"), (2, ParseErrorKind::Loop("0".into())));
    }

    #[test]
    fn edge_list_comments_and_blank_lines() {
        let text =
            "# header comment\n\nn 4   # four vertices\ne 0 1\n  # indented\ne 2 3 # trailing\n";
        let (g, _) = parse_edge_list(text).unwrap();
        assert_eq!(g, Graph::new(4, [(0, 1), (2, 3)]).unwrap());
    }

    #[test]
    fn edge_list_named_labels() {
        let (g, labels) = parse_edge_list("n 4\ne a b\ne b c\n").unwrap();
        assert_eq!(g, Graph::new(4, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(labels.label(0), "a");
        assert_eq!(labels.label(2), "c");
        assert_eq!(labels.label(3), "3");
        assert_eq!(labels.vertex("b"), Some(1));

        // "2" is taken by a named vertex, so the unused vertex 2 gets "_2"
        let (_, labels) = parse_edge_list("n 3\ne 2 x\n").unwrap();
        assert_eq!(labels.label(0), "2");
        assert_eq!(labels.label(2), "_2");
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(kind("e 0 1\n"), (1, ParseErrorKind::MissingHeader));
        assert_eq!(kind("# nothing\n"), (1, ParseErrorKind::MissingHeader));
        assert_eq!(kind("n 2\nn 2\n"), (2, ParseErrorKind::DuplicateHeader));
        assert_eq!(kind("n x\n"), (1, ParseErrorKind::BadCount("x".into())));
        assert_eq!(
            kind("n 2\nv 0\n"),
            (2, ParseErrorKind::UnknownDirective("v".into()))
        );
        assert_eq!(kind("n 2\ne 0\n"), (2, ParseErrorKind::MalformedEdge));
        assert_eq!(
            kind("n 2\ne a b\ne b c\n"),
            (3, ParseErrorKind::CountMismatch(2))
        );
        // an out-of-range integer switches to label mode, then overflows the count
        assert_eq!(
            kind("n 2\ne 0 5\ne 1 0\n"),
            (3, ParseErrorKind::CountMismatch(2))
        );
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(emit_graph6(&Graph::complete(2)), "A_");
        assert_eq!(emit_graph6(&Graph::empty(2)), "A?");
        assert_eq!(parse_graph6(b"A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6(b"A?").unwrap(), Graph::empty(2));
        assert_eq!(parse_graph6(b"?").unwrap(), Graph::empty(0));
        // reference strings from nauty's geng
        assert_eq!(emit_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(emit_graph6(&Graph::complete(4)), "C~");
        let g = Graph::new(7, [(0, 6), (2, 5), (3, 4), (1, 6)]).unwrap();
        assert_eq!(emit_graph6(&g), "F?Ce?");
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(b""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6(b"A_\n"),
            Err(Graph6Error::OutOfRange {
                offset: 2,
                byte: b'\n'
            })
        );
        assert_eq!(
            parse_graph6(b"A__"),
            Err(Graph6Error::Length {
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            parse_graph6(b"B"),
            Err(Graph6Error::Length {
                expected: 1,
                found: 0
            })
        );
        assert_eq!(parse_graph6(b"~??"), Err(Graph6Error::TooLarge));
        assert_eq!(parse_graph6(b"A`"), Err(Graph6Error::Padding));
    }

    #[test]
    fn dot_output() {
        let fig = Graph::new(3, [(0, 1)]).unwrap();
        let dot = emit_dot(&fig, None, None);
        assert!(dot.contains("0 -- 1"));
        assert!(dot.contains("  2 [label=\"2\"];"));
        assert_eq!(dot.matches(" -- ").count(), 1);

        assert_eq!(
            emit_dot(&Graph::complete(2), None, None)
                .matches(" -- ")
                .count(),
            1
        );

        let c4 = Graph::cycle(4);
        let p = crate::partition::canonical_partition(&c4).unwrap();
        let dot = emit_dot(&c4, None, Some(&p));
        assert_eq!(dot.matches("subgraph cluster_").count(), 2);
        assert!(!dot.contains("cluster_p0"));

        let p3 = Graph::path(3);
        let p = crate::partition::canonical_partition(&p3).unwrap();
        let dot = emit_dot(&p3, None, Some(&p));
        assert!(dot.contains("cluster_p0"));
    }

    #[test]
    fn classify_json_schema() {
        let fig = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            classify_json(&verdict(&fig)),
            r#"{"embeddable":false,"witness":{"edge":[0,1],"nonadjacent":2},"partition":null,"group":null,"canonical":null}"#
        );
        assert_eq!(
            classify_json(&verdict(&Graph::path(3))),
            r#"{"embeddable":true,"witness":null,"partition":{"p0":[1],"parts":[[0,2]]},"group":{"abelian_rank":1,"free_ranks":[2]},"canonical":"Z^1 x F_2"}"#
        );
    }
}
