//! Simple undirected graphs over dense 0-based vertex ids, plus the `.graph`
//! text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;

pub type VertexId = u32;

/// An undirected edge with canonical endpoint order `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    /// Panics on a loop; endpoints are stored with `a < b`.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert_ne!(u, v, "loop edge {u}-{u}");
        if u < v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        }
    }

    pub fn a(&self) -> VertexId {
        self.a
    }

    pub fn b(&self) -> VertexId {
        self.b
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_vertex(&self, other: Edge) -> bool {
        self.touches(other.a) || self.touches(other.b)
    }

    /// The endpoint other than `v`; panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            assert_eq!(v, self.b, "vertex {v} not on edge {self}");
            self.a
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl UndirectedGraph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse to one;
    /// loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0usize;
        let mut pairs: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("loop edge {u}-{v}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {u}-{v} references a vertex outside 0..{n}"
                )));
            }
            pairs.push(Edge::new(u, v));
        }
        pairs.sort();
        pairs.dedup();
        for e in &pairs {
            adj[e.a as usize].push(e.b);
            adj[e.b as usize].push(e.a);
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(UndirectedGraph { adj, m })
    }

    pub fn edgeless(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adj[u as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.a, e.b)
    }

    /// Edges in canonical `(a, b)` ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() as VertexId {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n() as VertexId).map(|u| self.degree(u)).collect()
    }

    /// The subgraph induced by `vertices` (need not be sorted), relabeled to
    /// local ids `0..k` in the given order. Returns the graph and the
    /// local-to-global id map.
    pub fn induced(&self, vertices: &[VertexId]) -> (UndirectedGraph, Vec<VertexId>) {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &v in vertices {
            for &w in self.neighbors(v) {
                if v < w && local[w as usize] != u32::MAX {
                    edges.push((local[v as usize], local[w as usize]));
                }
            }
        }
        let sub = UndirectedGraph::from_edges(vertices.len(), edges)
            .expect("induced subgraph edges are valid by construction");
        (sub, vertices.to_vec())
    }

    /// Connected components, each sorted ascending, ordered by smallest
    /// contained id.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.clear();
            queue.push(s as VertexId);
            let mut comp = vec![s as VertexId];
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Result of parsing a `.graph` file: the graph plus the optional embedded
/// vertex ordering.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: UndirectedGraph,
    pub ordering: Option<VertexOrdering>,
}

/// Parses the `.graph` format: header `n m`, an optional `order:` line with
/// all `n` ids, then `m` lines `u v`. Lines starting with `#` and blank
/// lines are ignored. Duplicate edge lines collapse to one edge.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut lines = significant_lines(text);

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty file; expected header 'n m'"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_field(line_no, it.next(), "vertex count")?;
    let m: usize = parse_field(line_no, it.next(), "edge count")?;
    if it.next().is_some() {
        return Err(Error::parse(
            line_no,
            "expected exactly 'n m' on the header line",
        ));
    }

    let mut ordering = None;
    let mut pending: Option<(usize, &str)> = lines.next();
    if let Some((ord_line, text)) = pending {
        if let Some(rest) = text.strip_prefix("order:") {
            let ids = rest
                .split_whitespace()
                .map(|tok| parse_id(ord_line, tok, n))
                .collect::<Result<Vec<_>>>()?;
            if ids.len() != n {
                return Err(Error::parse(
                    ord_line,
                    format!("order line lists {} ids, expected {n}", ids.len()),
                ));
            }
            ordering = Some(VertexOrdering::new(ids).map_err(|e| {
                Error::parse(ord_line, format!("order line is not a permutation: {e}"))
            })?);
            pending = lines.next();
        }
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, text) = match pending.take() {
            Some(x) => x,
            None => lines.next().ok_or_else(|| {
                Error::parse(
                    usize::MAX,
                    format!("expected {m} edge lines, found {}", edges.len()),
                )
            })?,
        };
        let mut it = text.split_whitespace();
        let u = parse_id(line_no, it.next().unwrap_or(""), n)?;
        let v_tok = it
            .next()
            .ok_or_else(|| Error::parse(line_no, "edge line needs two ids"))?;
        let v = parse_id(line_no, v_tok, n)?;
        if it.next().is_some() {
            return Err(Error::parse(line_no, "edge line has trailing tokens"));
        }
        if u == v {
            return Err(Error::parse(line_no, format!("loop edge {u}-{v}")));
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(
            line_no,
            "unexpected content after the last edge",
        ));
    }

    let graph = UndirectedGraph::from_edges(n, edges)?;
    if let Some(ord) = &ordering {
        if ord.len() != graph.n() {
            return Err(Error::InvalidInput("ordering length mismatch".into()));
        }
    }
    Ok(ParsedGraph { graph, ordering })
}

/// Writes the `.graph` format with edges in canonical ascending order and a
/// trailing newline.
pub fn write_graph(g: &UndirectedGraph, ordering: Option<&VertexOrdering>) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.m()));
    if let Some(ord) = ordering {
        out.push_str("order:");
        for &v in ord.vertices() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.a(), e.b()));
    }
    out
}

pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_field<T: std::str::FromStr>(
    line: usize,
    tok: Option<&str>,
    what: &str,
) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {what} from '{tok}'")))
}

fn parse_id(line: usize, tok: &str, n: usize) -> Result<VertexId> {
    let id: u64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("cannot parse vertex id from '{tok}'")))?;
    if id >= n as u64 {
        return Err(Error::parse(
            line,
            format!("vertex id {id} out of range 0..{n}"),
        ));
    }
    Ok(id as VertexId)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_smallest_path() {
        let parsed = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(parsed.graph.n(), 3);
        assert_eq!(parsed.graph.m(), 2);
        assert!(parsed.graph.has_edge(0, 1));
        assert!(parsed.graph.has_edge(1, 2));
        assert!(!parsed.graph.has_edge(0, 2));
        assert!(parsed.ordering.is_none());
    }

    #[test]
    fn parse_isolated_vertex() {
        let parsed = parse_graph("1 0\n").unwrap();
        assert_eq!(parsed.graph.n(), 1);
        assert_eq!(parsed.graph.m(), 0);
    }

    #[test]
    fn parse_errors_name_lines() {
        match parse_graph("2 1\n0 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected loop parse error, got {other:?}"),
        }
        match parse_graph("2 1\n# comment\n0 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected range parse error, got {other:?}"),
        }
        match parse_graph("2 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected header parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_edge_lines_collapse() {
        let parsed = parse_graph("3 3\n0 1\n1 0\n1 2\n").unwrap();
        assert_eq!(parsed.graph.m(), 2);
    }

    #[test]
    fn order_line_round_trips() {
        let parsed = parse_graph("3 1\norder: 2 0 1\n0 1\n").unwrap();
        let ord = parsed.ordering.unwrap();
        assert_eq!(ord.vertices(), &[2, 0, 1]);
        let written = write_graph(&parsed.graph, Some(&ord));
        let reparsed = parse_graph(&written).unwrap();
        assert_eq!(reparsed.graph, parsed.graph);
        assert_eq!(reparsed.ordering.unwrap().vertices(), &[2, 0, 1]);
        assert!(written.ends_with('\n'));
    }

    #[test]
    fn components_are_deterministic() {
        let g = UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        let edgeless = UndirectedGraph::edgeless(3);
        assert_eq!(edgeless.connected_components().len(), 3);
    }
}
