//! Closed-interval representations, endpoint normalization, the interval
//! intersection graph, and the `.ivg` text format.
//!
//! Intervals are closed: touching endpoints intersect. Normalization remaps
//! every endpoint to a distinct integer in `[1, 2n]` while preserving the
//! intersection graph exactly, by ranking at equal coordinates all left
//! endpoints before all right endpoints (and lower vertex ids first within
//! a kind).

use crate::error::{Error, Result};
use crate::graph::{parse_field, significant_lines, UndirectedGraph, VertexId};
use crate::ordering::VertexOrdering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRep {
    left: Vec<i64>,
    right: Vec<i64>,
}

impl IntervalRep {
    /// One `(left, right)` pair per vertex; requires `left <= right`.
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        for (u, &(l, r)) in intervals.iter().enumerate() {
            if l > r {
                return Err(Error::InvalidInput(format!(
                    "vertex {u}: left endpoint {l} exceeds right endpoint {r}"
                )));
            }
        }
        let (left, right) = intervals.into_iter().unzip();
        Ok(IntervalRep { left, right })
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self, u: VertexId) -> i64 {
        self.left[u as usize]
    }

    pub fn right(&self, u: VertexId) -> i64 {
        self.right[u as usize]
    }

    pub fn intersects(&self, u: VertexId, v: VertexId) -> bool {
        self.left(u).max(self.left(v)) <= self.right(u).min(self.right(v))
    }

    /// All `2n` endpoints are distinct integers covering `[1, 2n]`.
    pub fn is_normalized(&self) -> bool {
        let n = self.len() as i64;
        let mut seen = vec![false; 2 * self.len()];
        for u in 0..self.len() {
            for &c in [self.left[u], self.right[u]].iter() {
                if c < 1 || c > 2 * n || seen[(c - 1) as usize] {
                    return false;
                }
                seen[(c - 1) as usize] = true;
            }
        }
        true
    }

    /// Remaps endpoints to distinct integers in `[1, 2n]`, preserving the
    /// intersection graph. Idempotent.
    pub fn normalize(&self) -> IntervalRep {
        let n = self.len();
        // (coord, kind, vertex); kind 0 = left, 1 = right.
        let mut events: Vec<(i64, u8, u32)> = Vec::with_capacity(2 * n);
        for u in 0..n {
            events.push((self.left[u], 0, u as u32));
            events.push((self.right[u], 1, u as u32));
        }
        events.sort_unstable();
        let mut left = vec![0i64; n];
        let mut right = vec![0i64; n];
        for (rank, &(_, kind, u)) in events.iter().enumerate() {
            let coord = (rank + 1) as i64;
            if kind == 0 {
                left[u as usize] = coord;
            } else {
                right[u as usize] = coord;
            }
        }
        IntervalRep { left, right }
    }
}

/// Builds the intersection graph by sweeping endpoints left to right:
/// `uv` is an edge iff the closed intervals of `u` and `v` meet.
/// O(n log n + m).
pub fn intersection_graph(rep: &IntervalRep) -> UndirectedGraph {
    let n = rep.len();
    let mut events: Vec<(i64, u8, u32)> = Vec::with_capacity(2 * n);
    for u in 0..n {
        events.push((rep.left(u as u32), 0, u as u32));
        events.push((rep.right(u as u32), 1, u as u32));
    }
    events.sort_unstable();

    let mut edges = Vec::new();
    let mut active: Vec<u32> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for &(_, kind, u) in &events {
        if kind == 0 {
            for &w in &active {
                edges.push((u, w));
            }
            slot[u as usize] = active.len();
            active.push(u);
        } else {
            let i = slot[u as usize];
            active.swap_remove(i);
            if let Some(&moved) = active.get(i) {
                slot[moved as usize] = i;
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("sweep produces valid simple edges")
}

/// Sorts vertices by left endpoint after checking that no interval strictly
/// contains another; the resulting ordering is proper for the intersection
/// graph. Ties (possible only between identical intervals) break by id.
pub fn ordering_from_proper_rep(rep: &IntervalRep) -> Result<VertexOrdering> {
    let n = rep.len();
    let mut ids: Vec<u32> = (0..n as u32).collect();
    ids.sort_by_key(|&u| (rep.left(u), rep.right(u), u));

    // Scan for strict containment. Sorted by (left, right), a contained
    // interval either follows a wider-reaching one, or shares its left
    // endpoint with the immediately following interval.
    let mut max_r: Option<(i64, u32)> = None; // (right endpoint, vertex)
    let mut prev: Option<u32> = None;
    for &u in &ids {
        if let Some((r, holder)) = max_r {
            let strictly_inside =
                rep.right(u) < r || (rep.right(u) == r && rep.left(holder) < rep.left(u));
            if strictly_inside {
                return Err(Error::NotProperRep {
                    outer: holder,
                    inner: u,
                });
            }
        }
        if let Some(p) = prev {
            if rep.left(p) == rep.left(u) && rep.right(p) < rep.right(u) {
                return Err(Error::NotProperRep { outer: u, inner: p });
            }
        }
        if max_r.is_none_or(|(r, _)| rep.right(u) > r) {
            max_r = Some((rep.right(u), u));
        }
        prev = Some(u);
    }
    VertexOrdering::new(ids)
}

/// Parses the `.ivg` format: header `n`, then `n` lines `id left right`.
/// `#` comments and blank lines are ignored.
pub fn parse_ivg(text: &str) -> Result<IntervalRep> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty file; expected vertex count"))?;
    let n: usize = parse_field(line_no, header.split_whitespace().next(), "vertex count")?;

    let mut left = vec![None; n];
    let mut right = vec![0i64; n];
    for _ in 0..n {
        let (line_no, text) = lines
            .next()
            .ok_or_else(|| Error::parse(usize::MAX, format!("expected {n} interval lines")))?;
        let mut it = text.split_whitespace();
        let id: usize = parse_field(line_no, it.next(), "vertex id")?;
        if id >= n {
            return Err(Error::parse(
                line_no,
                format!("vertex id {id} out of range 0..{n}"),
            ));
        }
        if left[id].is_some() {
            return Err(Error::parse(line_no, format!("vertex {id} listed twice")));
        }
        let l: i64 = parse_field(line_no, it.next(), "left endpoint")?;
        let r: i64 = parse_field(line_no, it.next(), "right endpoint")?;
        if l > r {
            return Err(Error::parse(
                line_no,
                format!("interval [{l}, {r}] has left > right"),
            ));
        }
        left[id] = Some(l);
        right[id] = r;
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(
            line_no,
            "unexpected content after the last interval",
        ));
    }
    let left: Vec<i64> = left
        .into_iter()
        .enumerate()
        .map(|(id, l)| l.ok_or_else(|| Error::InvalidInput(format!("vertex {id} missing"))))
        .collect::<Result<_>>()?;
    Ok(IntervalRep { left, right })
}

/// Writes the `.ivg` format with ids ascending and a trailing newline.
pub fn write_ivg(rep: &IntervalRep) -> String {
    let mut out = format!("{}\n", rep.len());
    for u in 0..rep.len() as u32 {
        out.push_str(&format!("{u} {} {}\n", rep.left(u), rep.right(u)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(v: &[(i64, i64)]) -> IntervalRep {
        IntervalRep::new(v.to_vec()).unwrap()
    }

    fn same_intersection_graph(a: &IntervalRep, b: &IntervalRep) -> bool {
        intersection_graph(a) == intersection_graph(b)
    }

    #[test]
    fn normalize_two_overlapping() {
        let r = rep(&[(1, 4), (3, 8)]);
        let norm = r.normalize();
        assert_eq!((norm.left(0), norm.right(0)), (1, 3));
        assert_eq!((norm.left(1), norm.right(1)), (2, 4));
        assert!(same_intersection_graph(&r, &norm));
    }

    #[test]
    fn normalize_degenerate_point() {
        let norm = rep(&[(5, 5)]).normalize();
        assert_eq!((norm.left(0), norm.right(0)), (1, 2));
    }

    #[test]
    fn normalize_touching_keeps_intersection() {
        let r = rep(&[(1, 4), (4, 9)]);
        let norm = r.normalize();
        assert!(
            norm.left(1) < norm.right(0),
            "left endpoint must rank before touching right"
        );
        assert!(same_intersection_graph(&r, &norm));
        assert!(norm.is_normalized());
        assert_eq!(norm.normalize(), norm);
    }

    #[test]
    fn intersection_graph_examples() {
        let disjoint = rep(&[(0, 1), (10, 11), (20, 21)]);
        assert_eq!(intersection_graph(&disjoint).m(), 0);

        let nested = rep(&[(1, 10), (2, 9), (3, 8), (4, 7)]);
        let k4 = intersection_graph(&nested);
        assert_eq!(k4.m(), 6);

        let p3 = rep(&[(1, 4), (3, 8), (6, 9)]);
        let g = intersection_graph(&p3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn proper_ordering_sorts_by_left() {
        let r = rep(&[(3, 4), (1, 2), (2, 3)]);
        let ord = ordering_from_proper_rep(&r).unwrap();
        assert_eq!(ord.vertices(), &[1, 2, 0]);
    }

    #[test]
    fn containment_is_rejected_with_pair() {
        let r = rep(&[(1, 10), (2, 5)]);
        match ordering_from_proper_rep(&r) {
            Err(Error::NotProperRep { outer, inner }) => assert_eq!((outer, inner), (0, 1)),
            other => panic!("expected containment error, got {other:?}"),
        }
        // Shared left endpoint with different rights is still containment.
        assert!(ordering_from_proper_rep(&rep(&[(1, 6), (1, 4)])).is_err());
        // Identical intervals are fine.
        assert!(ordering_from_proper_rep(&rep(&[(1, 4), (1, 4)])).is_ok());
    }

    #[test]
    fn ivg_round_trip() {
        let r = rep(&[(1, 4), (3, 8), (6, 9)]);
        let text = write_ivg(&r);
        assert!(text.ends_with('\n'));
        assert_eq!(parse_ivg(&text).unwrap(), r);
        assert!(parse_ivg("2\n0 1 2\n").is_err()); // missing line
        assert!(parse_ivg("1\n0 5 3\n").is_err()); // left > right
    }
}
