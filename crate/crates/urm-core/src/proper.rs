//! Linear-time maximum uniquely restricted matching in proper interval
//! graphs.
//!
//! Under a proper vertex ordering, a pair of disjoint edges is uniquely
//! restricted iff their lower endpoints or their upper endpoints are
//! nonadjacent, and a whole matching is uniquely restricted iff every
//! consecutive pair (by lower-endpoint rank) is. Each edge `e` therefore
//! has at most two useful "next" edges, and the best chain starting at a
//! given edge satisfies a memoizable recurrence: `chain(e)` extends `e` by
//! the larger of the chains of its two candidate successors (preferring the
//! first on ties). The chain of the first consecutive edge of each
//! connected component is a maximum uniquely restricted matching of that
//! component.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, UndirectedGraph, VertexId};
use crate::matching::Matching;
use crate::ordering::{compute_lambda_rho, validate_proper_ordering, LambdaRho, VertexOrdering};

/// Pair test under a proper ordering: disjoint edges are uniquely
/// restricted iff their lower endpoints or their upper endpoints are
/// nonadjacent. Returns `false` when the two edges are not a matching.
pub fn pair_is_ur_proper(g: &UndirectedGraph, ord: &VertexOrdering, e: Edge, f: Edge) -> bool {
    if e == f || e.shares_vertex(f) {
        return false;
    }
    !g.has_edge(ord.edge_lo(e), ord.edge_lo(f)) || !g.has_edge(ord.edge_hi(e), ord.edge_hi(f))
}

/// Solver context over one connected graph with a validated proper vertex
/// ordering. Exposes the per-edge successor pair and memoized chains; the
/// whole chain table is filled in one reverse sweep at construction.
pub struct ProperContext<'a> {
    g: &'a UndirectedGraph,
    ord: &'a VertexOrdering,
    lr: LambdaRho,
    edges: Vec<Edge>,
    index: HashMap<Edge, u32>,
    /// Edge between the vertices at ranks `i` and `i+1` (always present in
    /// a connected graph under a proper ordering).
    consecutive: Vec<u32>,
    sigma_l: Vec<Option<u32>>,
    sigma_r: Vec<Option<u32>>,
    chain_size: Vec<u32>,
    chain_next: Vec<Option<u32>>,
}

impl<'a> ProperContext<'a> {
    /// Validates the ordering and connectivity, then precomputes successor
    /// pointers and all chain sizes in O(n + m).
    pub fn new(g: &'a UndirectedGraph, ord: &'a VertexOrdering) -> Result<Self> {
        validate_proper_ordering(g, ord)?;
        if g.connected_components().len() > 1 {
            return Err(Error::InvalidInput(
                "context requires a connected graph; split components first".into(),
            ));
        }
        let n = g.n();
        let lr = compute_lambda_rho(g, ord);

        let edges = g.edges();
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            index.insert(e, i as u32);
        }

        // Consecutive vertices are adjacent in a connected graph under a
        // proper ordering.
        let mut consecutive = Vec::with_capacity(n.saturating_sub(1));
        for rank in 0..n.saturating_sub(1) {
            let e = Edge::new(ord.vertex_at(rank), ord.vertex_at(rank + 1));
            let id = *index
                .get(&e)
                .unwrap_or_else(|| panic!("consecutive vertices {e} must be adjacent"));
            consecutive.push(id);
        }
        // Edge from each non-first vertex down to its earliest neighbor.
        let mut lambda_edge = vec![None; n];
        for rank in 1..n {
            let u = ord.vertex_at(rank);
            debug_assert_ne!(
                lr.lambda(u),
                u,
                "non-first vertices have an earlier neighbor"
            );
            lambda_edge[u as usize] = index.get(&Edge::new(lr.lambda(u), u)).copied();
        }

        let mut sigma_l = vec![None; edges.len()];
        let mut sigma_r = vec![None; edges.len()];
        for (i, &e) in edges.iter().enumerate() {
            let lo = ord.edge_lo(e);
            let hi = ord.edge_hi(e);
            let reach_lo = ord.rank(lr.rho(lo));
            if reach_lo + 2 < n {
                sigma_l[i] = Some(consecutive[reach_lo + 1]);
            }
            let reach_hi = ord.rank(lr.rho(hi));
            if reach_hi + 1 < n {
                let next = ord.vertex_at(reach_hi + 1);
                sigma_r[i] = lambda_edge[next as usize];
                debug_assert!(sigma_r[i].is_some());
            }
        }

        let mut ctx = ProperContext {
            g,
            ord,
            lr,
            edges,
            index,
            consecutive,
            sigma_l,
            sigma_r,
            chain_size: Vec::new(),
            chain_next: Vec::new(),
        };
        ctx.fill_chains();
        Ok(ctx)
    }

    /// One pass over edges in decreasing lower-endpoint rank; both
    /// successors of an edge start strictly after its upper endpoint, so
    /// their entries are already final.
    fn fill_chains(&mut self) {
        let m = self.edges.len();
        let mut order: Vec<u32> = (0..m as u32).collect();
        order.sort_by_key(|&i| {
            std::cmp::Reverse(self.ord.rank(self.ord.edge_lo(self.edges[i as usize])))
        });
        let mut size = vec![0u32; m];
        let mut next = vec![None; m];
        let mut done = vec![false; m];
        for &i in &order {
            let e = self.edges[i as usize];
            for succ in [self.sigma_l[i as usize], self.sigma_r[i as usize]]
                .into_iter()
                .flatten()
            {
                let s = self.edges[succ as usize];
                assert!(
                    self.ord.rank(self.ord.edge_hi(e)) < self.ord.rank(self.ord.edge_lo(s)),
                    "successor {s} must start after {e} ends"
                );
                assert!(
                    done[succ as usize],
                    "successor computed before its predecessor"
                );
            }
            let (best, best_size) = match (self.sigma_l[i as usize], self.sigma_r[i as usize]) {
                (None, None) => (None, 0),
                (Some(l), None) => (Some(l), size[l as usize]),
                (None, Some(r)) => (Some(r), size[r as usize]),
                (Some(l), Some(r)) => {
                    if size[l as usize] >= size[r as usize] {
                        (Some(l), size[l as usize])
                    } else {
                        (Some(r), size[r as usize])
                    }
                }
            };
            size[i as usize] = 1 + best_size;
            next[i as usize] = best;
            done[i as usize] = true;
        }
        self.chain_size = size;
        self.chain_next = next;
    }

    fn edge_id(&self, e: Edge) -> u32 {
        *self
            .index
            .get(&e)
            .unwrap_or_else(|| panic!("{e} is not an edge of the context graph"))
    }

    pub fn graph(&self) -> &UndirectedGraph {
        self.g
    }

    pub fn ordering(&self) -> &VertexOrdering {
        self.ord
    }

    pub fn lambda(&self, u: VertexId) -> VertexId {
        self.lr.lambda(u)
    }

    pub fn rho(&self, u: VertexId) -> VertexId {
        self.lr.rho(u)
    }

    /// The two candidate successor edges of `e` (lower-side, upper-side).
    pub fn successors(&self, e: Edge) -> (Option<Edge>, Option<Edge>) {
        let i = self.edge_id(e) as usize;
        (
            self.sigma_l[i].map(|j| self.edges[j as usize]),
            self.sigma_r[i].map(|j| self.edges[j as usize]),
        )
    }

    /// Size of the best chain starting at `e` (at least 1).
    pub fn chain_size(&self, e: Edge) -> usize {
        self.chain_size[self.edge_id(e) as usize] as usize
    }

    /// Materializes the best chain starting at `e`.
    pub fn chain(&self, e: Edge) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.chain_size(e));
        let mut cur = Some(self.edge_id(e));
        while let Some(i) = cur {
            out.push(self.edges[i as usize]);
            cur = self.chain_next[i as usize];
        }
        out
    }

    pub fn pair_is_ur(&self, e: Edge, f: Edge) -> bool {
        pair_is_ur_proper(self.g, self.ord, e, f)
    }

    /// The first consecutive edge (between ranks 0 and 1), when any edge
    /// exists.
    pub fn root_edge(&self) -> Option<Edge> {
        self.consecutive.first().map(|&i| self.edges[i as usize])
    }
}

/// Maximum uniquely restricted matching of a proper interval graph, given a
/// proper vertex ordering (validated; a witness triple is reported
/// otherwise). Each connected component contributes the chain of its first
/// consecutive edge; output edges are sorted by lower-endpoint rank.
/// O(n + m).
pub fn solve_proper(g: &UndirectedGraph, ord: &VertexOrdering) -> Result<Matching> {
    validate_proper_ordering(g, ord)?;
    let mut picked: Vec<Edge> = Vec::new();
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        // Relabel the component by rank so its induced ordering is the
        // identity.
        let mut by_rank = comp.clone();
        by_rank.sort_by_key(|&v| ord.rank(v));
        let (sub, to_global) = g.induced(&by_rank);
        let sub_ord = VertexOrdering::identity(sub.n());
        let ctx = ProperContext::new(&sub, &sub_ord)?;
        if let Some(root) = ctx.root_edge() {
            for e in ctx.chain(root) {
                picked.push(Edge::new(
                    to_global[e.a() as usize],
                    to_global[e.b() as usize],
                ));
            }
        }
    }
    Matching::new(picked)
}
