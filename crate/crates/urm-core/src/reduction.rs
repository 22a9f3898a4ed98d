//! Maximum uniquely restricted matching in general interval graphs, by
//! reduction to a maximum strong independent set in an interval nest
//! digraph.
//!
//! Each edge of the interval graph becomes a nest vertex whose span is the
//! union of its endpoints' intervals and whose core is their intersection
//! (nonempty, since they meet). Two edges can coexist in a uniquely
//! restricted matching exactly when their nest vertices are not mutually
//! arced, so edge subsets correspond one-to-one between uniquely restricted
//! matchings and strong independent sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, UndirectedGraph};
use crate::intervals::{intersection_graph, IntervalRep};
use crate::matching::Matching;
use crate::nest::{is_strong_independent, max_sis, NestRep};
use crate::verify::{is_matching, is_ur_oracle};

/// Default refusal threshold for the reduction solver; the strong
/// independent set stage costs O(m^4) in the worst case.
pub const DEFAULT_EDGE_BOUND: usize = 2000;

/// Edge subsets checkable exhaustively by [`reduction_faithful`].
pub const FAITHFUL_EDGE_BOUND: usize = 16;

/// Bijection between graph edges and nest vertices.
#[derive(Clone, Debug)]
pub struct EdgeNestMap {
    edges: Vec<Edge>,
    index: HashMap<Edge, u32>,
}

impl EdgeNestMap {
    pub fn edge(&self, nest_id: u32) -> Edge {
        self.edges[nest_id as usize]
    }

    pub fn nest_id(&self, e: Edge) -> Option<u32> {
        self.index.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Builds the nest representation over the edges of `g`, which must be the
/// intersection graph of the normalized `rep`. Nest ids follow edge spans
/// sorted by (span start, span end, endpoints); endpoint collisions between
/// edge spans are resolved by nest normalization.
pub fn build_nest_from_intervals(
    rep: &IntervalRep,
    g: &UndirectedGraph,
) -> Result<(NestRep, EdgeNestMap)> {
    if !rep.is_normalized() {
        return Err(Error::InvalidInput(
            "reduction requires a normalized interval representation".into(),
        ));
    }
    let mut keyed: Vec<(i64, i64, Edge)> = g
        .edges()
        .into_iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            assert!(rep.intersects(u, v), "edge {e} endpoints must intersect");
            let span_l = rep.left(u).min(rep.left(v));
            let span_r = rep.right(u).max(rep.right(v));
            (span_l, span_r, e)
        })
        .collect();
    keyed.sort();

    let mut rows = Vec::with_capacity(keyed.len());
    let mut edges = Vec::with_capacity(keyed.len());
    let mut index = HashMap::with_capacity(keyed.len());
    for (i, &(span_l, span_r, e)) in keyed.iter().enumerate() {
        let (u, v) = e.endpoints();
        let core_l = rep.left(u).max(rep.left(v));
        let core_r = rep.right(u).min(rep.right(v));
        rows.push((span_l, core_l, core_r, span_r));
        edges.push(e);
        index.insert(e, i as u32);
    }
    let nest = NestRep::new(rows)?.normalize();
    Ok((nest, EdgeNestMap { edges, index }))
}

/// Maximum uniquely restricted matching of the intersection graph of `rep`:
/// normalize, build the edge nest, solve the strong independent set, map
/// back. Refuses more than [`DEFAULT_EDGE_BOUND`] edges unless `force` is
/// set.
pub fn solve_interval_urm(rep: &IntervalRep, force: bool) -> Result<Matching> {
    let norm = rep.normalize();
    let g = intersection_graph(&norm);
    if !force && g.m() > DEFAULT_EDGE_BOUND {
        return Err(Error::BoundExceeded {
            what: "interval reduction (O(m^4) strong-independent-set stage)",
            limit: DEFAULT_EDGE_BOUND,
            actual: g.m(),
            hint: "pass --force to attempt it anyway",
        });
    }
    let (nest, map) = build_nest_from_intervals(&norm, &g)?;
    let picked = max_sis(&nest);
    Matching::new(picked.into_iter().map(|id| map.edge(id)).collect())
}

/// Spot check of the edge-subset correspondence: for every sampled subset,
/// strong independence in the nest must coincide with being a uniquely
/// restricted matching in the graph. Desk scale only.
pub fn reduction_faithful(
    rep: &IntervalRep,
    g: &UndirectedGraph,
    sample_sets: &[Vec<Edge>],
) -> Result<bool> {
    if g.m() > FAITHFUL_EDGE_BOUND {
        return Err(Error::BoundExceeded {
            what: "reduction faithfulness check",
            limit: FAITHFUL_EDGE_BOUND,
            actual: g.m(),
            hint: "sample smaller instances",
        });
    }
    let norm = rep.normalize();
    let (nest, map) = build_nest_from_intervals(&norm, g)?;
    for set in sample_sets {
        let ids: Vec<u32> = set
            .iter()
            .map(|&e| {
                map.nest_id(e)
                    .ok_or_else(|| Error::InvalidInput(format!("{e} is not an edge of the graph")))
            })
            .collect::<Result<_>>()?;
        let sis = is_strong_independent(&nest, &ids);
        let urm = is_matching(g, set)? && is_ur_oracle(g, set)?;
        if sis != urm {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{fig1, fig1_intervals};
    use crate::verify::{is_ur_c4free, max_urm_bruteforce};

    fn p3_rep() -> IntervalRep {
        IntervalRep::new(vec![(1, 4), (3, 8), (6, 9)]).unwrap()
    }

    #[test]
    fn path_edges_are_mutually_arced() {
        let rep = p3_rep().normalize();
        let g = intersection_graph(&rep);
        let (nest, map) = build_nest_from_intervals(&rep, &g).unwrap();
        let e1 = map.nest_id(Edge::new(0, 1)).unwrap();
        let e2 = map.nest_id(Edge::new(1, 2)).unwrap();
        assert!(nest.arc(e1, e2) && nest.arc(e2, e1));
        assert_eq!(max_sis(&nest).len(), 1);
    }

    #[test]
    fn single_edge_graph() {
        let rep = IntervalRep::new(vec![(1, 5), (2, 6)]).unwrap();
        let m = solve_interval_urm(&rep, false).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn k4_from_nested_intervals() {
        let rep = IntervalRep::new(vec![(1, 10), (2, 9), (3, 8), (4, 7)]).unwrap();
        let norm = rep.normalize();
        let g = intersection_graph(&norm);
        assert_eq!(g.m(), 6);
        let (nest, _) = build_nest_from_intervals(&norm, &g).unwrap();
        assert_eq!(nest.len(), 6);
        assert_eq!(max_sis(&nest).len(), 1);
        let m = solve_interval_urm(&rep, false).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.len(), max_urm_bruteforce(&g).unwrap().len());
    }

    #[test]
    fn fig1_realization_solves_to_three() {
        let rep = fig1_intervals();
        let m = solve_interval_urm(&rep, false).unwrap();
        assert_eq!(m.len(), 3);
        let g = intersection_graph(&rep.normalize());
        assert!(is_ur_oracle(&g, m.edges()).unwrap());
        assert!(is_ur_c4free(&g, m.edges()).unwrap());
        assert_eq!(m.len(), max_urm_bruteforce(&fig1().graph).unwrap().len());
    }

    #[test]
    fn edgeless_input_gives_empty_matching() {
        let rep = IntervalRep::new(vec![(0, 1), (10, 11)]).unwrap();
        assert!(solve_interval_urm(&rep, false).unwrap().is_empty());
    }

    #[test]
    fn faithfulness_examples() {
        let rep = p3_rep();
        let g = intersection_graph(&rep.normalize());
        let sets = vec![
            vec![],
            vec![Edge::new(0, 1), Edge::new(1, 2)], // share a vertex
            vec![Edge::new(0, 1)],
        ];
        assert!(reduction_faithful(&rep, &g, &sets).unwrap());

        let fig = fig1_intervals();
        let g = intersection_graph(&fig.normalize());
        let bold = vec![Edge::new(0, 1), Edge::new(2, 4), Edge::new(5, 6)];
        assert!(reduction_faithful(&fig, &g, &[bold]).unwrap());
    }
}
