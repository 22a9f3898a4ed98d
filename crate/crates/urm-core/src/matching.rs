//! Vertex-disjoint edge sets and the `.matching` text format.

use crate::error::{Error, Result};
use crate::graph::{parse_field, significant_lines, Edge, VertexId};

/// A set of pairwise vertex-disjoint edges, stored in canonical ascending
/// order. Disjointness is checked at construction; arbitrary candidate edge
/// sets are handled as plain `&[Edge]` by the verification operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        edges.dedup();
        let mut seen: Vec<VertexId> = edges.iter().flat_map(|e| [e.a(), e.b()]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("edges are not vertex-disjoint".into()));
        }
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// All matched vertices, ascending.
    pub fn matched_vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.edges.iter().flat_map(|e| [e.a(), e.b()]).collect();
        v.sort_unstable();
        v
    }
}

/// Parses the `.matching` format: header `size k`, then `k` lines `u v`.
/// Returns the raw edge list; disjointness is a verification concern, not a
/// parse error.
pub fn parse_matching(text: &str) -> Result<Vec<Edge>> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty file; expected header 'size k'"))?;
    let mut it = header.split_whitespace();
    match it.next() {
        Some("size") => {}
        _ => return Err(Error::parse(line_no, "expected header 'size k'")),
    }
    let k: usize = parse_field(line_no, it.next(), "matching size")?;

    let mut edges = Vec::with_capacity(k);
    for _ in 0..k {
        let (line_no, text) = lines
            .next()
            .ok_or_else(|| Error::parse(usize::MAX, format!("expected {k} edge lines")))?;
        let mut it = text.split_whitespace();
        let u: VertexId = parse_field(line_no, it.next(), "vertex id")?;
        let v: VertexId = parse_field(line_no, it.next(), "vertex id")?;
        if u == v {
            return Err(Error::parse(line_no, format!("loop edge {u}-{v}")));
        }
        edges.push(Edge::new(u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(
            line_no,
            "unexpected content after the last edge",
        ));
    }
    Ok(edges)
}

/// Writes the `.matching` format: `u < v` per line, lines sorted by `u`,
/// trailing newline.
pub fn write_matching(m: &Matching) -> String {
    let mut out = format!("size {}\n", m.len());
    for e in m.edges() {
        out.push_str(&format!("{} {}\n", e.a(), e.b()));
    }
    out
}
