//! Linear-time maximum uniquely restricted matching in bipartite
//! permutation graphs.
//!
//! Under a transitive vertex ordering of a connected bipartite permutation
//! graph every vertex is either a *left* vertex (all neighbors after it) or
//! a *right* vertex (all neighbors before it), and every edge goes left to
//! right. Disjoint edge pairs sorted by lower endpoint are uniquely
//! restricted exactly when the earlier edge ends before the later starts,
//! or their spans interleave and the outer cross edge is absent; nested
//! spans always fail. As in the proper-interval case this yields two
//! candidate successor edges per edge and a memoized best-chain recurrence;
//! the answer is the chain of the first vertex's edge to its earliest
//! neighbor, per connected component.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, UndirectedGraph, VertexId};
use crate::matching::Matching;
use crate::ordering::{
    compute_lambda_rho, validate_transitive_ordering, LambdaRho, VertexOrdering,
    TRANSITIVE_VALIDATION_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn is_left(&self) -> bool {
        matches!(self, Side::Left)
    }
}

/// Classifies every vertex: left iff all its neighbors come after it,
/// right iff all come before. Mixed neighborhoods mean the ordering is not
/// a transitive ordering of a bipartite graph; isolated vertices are not
/// classifiable.
pub fn classify_sides(g: &UndirectedGraph, ord: &VertexOrdering) -> Result<Vec<Side>> {
    let mut sides = Vec::with_capacity(g.n());
    for u in 0..g.n() as VertexId {
        if g.degree(u) == 0 {
            return Err(Error::InvalidInput(format!(
                "vertex {u} is isolated; remove isolated vertices before classifying"
            )));
        }
        let after = g.neighbors(u).iter().filter(|&&w| ord.before(u, w)).count();
        if after == g.degree(u) {
            sides.push(Side::Left);
        } else if after == 0 {
            sides.push(Side::Right);
        } else {
            return Err(Error::MixedSides { vertex: u });
        }
    }
    Ok(sides)
}

/// Pair test under a transitive ordering of a bipartite permutation graph.
/// Returns `false` when the two edges are not a matching.
pub fn pair_is_ur_bipperm(g: &UndirectedGraph, ord: &VertexOrdering, e: Edge, f: Edge) -> bool {
    if e == f || e.shares_vertex(f) {
        return false;
    }
    let (first, second) = if ord.before(ord.edge_lo(e), ord.edge_lo(f)) {
        (e, f)
    } else {
        (f, e)
    };
    let r1 = ord.edge_hi(first);
    let l2 = ord.edge_lo(second);
    let r2 = ord.edge_hi(second);
    if ord.before(r1, l2) {
        true
    } else if ord.before(r1, r2) {
        !g.has_edge(ord.edge_lo(first), r2)
    } else {
        false
    }
}

/// Solver context over an isolated-vertex-free graph whose ordering
/// classifies cleanly into sides. Transitive validation is the caller's
/// responsibility (see [`solve_bipperm`]).
pub struct BipPermContext<'a> {
    g: &'a UndirectedGraph,
    ord: &'a VertexOrdering,
    sides: Vec<Side>,
    lr: LambdaRho,
    /// Earliest later neighbor of each left vertex.
    gamma: Vec<Option<VertexId>>,
    /// Next left vertex strictly after each vertex, by one backward sweep.
    nu: Vec<Option<VertexId>>,
    edges: Vec<Edge>,
    index: HashMap<Edge, u32>,
    x_edge: Vec<Option<u32>>,
    y_edge: Vec<Option<u32>>,
    chain_size: Vec<u32>,
    chain_next: Vec<Option<u32>>,
}

impl<'a> BipPermContext<'a> {
    pub fn new(g: &'a UndirectedGraph, ord: &'a VertexOrdering) -> Result<Self> {
        if ord.len() != g.n() {
            return Err(Error::InvalidInput("ordering length mismatch".into()));
        }
        let n = g.n();
        let sides = classify_sides(g, ord)?;
        let lr = compute_lambda_rho(g, ord);

        let mut gamma = vec![None; n];
        for u in 0..n as VertexId {
            if sides[u as usize].is_left() {
                let first = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .min_by_key(|&w| ord.rank(w))
                    .expect("left vertices have neighbors");
                gamma[u as usize] = Some(first);
            }
        }
        let mut nu = vec![None; n];
        let mut next_left: Option<VertexId> = None;
        for rank in (0..n).rev() {
            let u = ord.vertex_at(rank);
            nu[u as usize] = next_left;
            if sides[u as usize].is_left() {
                next_left = Some(u);
            }
        }

        let edges = g.edges();
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            index.insert(e, i as u32);
        }

        let mut x_edge = vec![None; edges.len()];
        let mut y_edge = vec![None; edges.len()];
        for (i, &e) in edges.iter().enumerate() {
            let lo = ord.edge_lo(e);
            let hi = ord.edge_hi(e);
            // Candidate reached over the lower endpoint: step past its last
            // neighbor, land on (or hop to) a right vertex, take that
            // vertex's edge to its earliest neighbor.
            let reach = ord.rank(lr.rho(lo));
            if reach + 1 < n {
                let next = ord.vertex_at(reach + 1);
                let u = if sides[next as usize].is_left() {
                    gamma[next as usize].expect("left vertices have a first neighbor")
                } else {
                    next
                };
                let x = Edge::new(lr.lambda(u), u);
                x_edge[i] = Some(*index.get(&x).expect("lambda edges exist"));
            }
            // Candidate past the upper endpoint: the next left vertex and
            // its earliest neighbor.
            if let Some(u) = nu[hi as usize] {
                let y = Edge::new(u, gamma[u as usize].expect("left vertex"));
                y_edge[i] = Some(*index.get(&y).expect("gamma edges exist"));
            }
        }

        let mut ctx = BipPermContext {
            g,
            ord,
            sides,
            lr,
            gamma,
            nu,
            edges,
            index,
            x_edge,
            y_edge,
            chain_size: Vec::new(),
            chain_next: Vec::new(),
        };
        ctx.fill_chains();
        Ok(ctx)
    }

    /// Edges in decreasing lower-endpoint rank; both candidate successors
    /// start strictly after the edge's own lower endpoint.
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
            for succ in [self.x_edge[i as usize], self.y_edge[i as usize]]
                .into_iter()
                .flatten()
            {
                let s = self.edges[succ as usize];
                assert!(
                    self.ord.rank(self.ord.edge_lo(e)) < self.ord.rank(self.ord.edge_lo(s)),
                    "successor {s} must start after {e} starts"
                );
                assert!(
                    done[succ as usize],
                    "successor computed before its predecessor"
                );
            }
            let (best, best_size) = match (self.x_edge[i as usize], self.y_edge[i as usize]) {
                (None, None) => (None, 0),
                (Some(x), None) => (Some(x), size[x as usize]),
                (None, Some(y)) => (Some(y), size[y as usize]),
                (Some(x), Some(y)) => {
                    if size[x as usize] >= size[y as usize] {
                        (Some(x), size[x as usize])
                    } else {
                        (Some(y), size[y as usize])
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

    pub fn side(&self, u: VertexId) -> Side {
        self.sides[u as usize]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn gamma(&self, u: VertexId) -> Option<VertexId> {
        self.gamma[u as usize]
    }

    pub fn nu(&self, u: VertexId) -> Option<VertexId> {
        self.nu[u as usize]
    }

    pub fn lambda(&self, u: VertexId) -> VertexId {
        self.lr.lambda(u)
    }

    pub fn rho(&self, u: VertexId) -> VertexId {
        self.lr.rho(u)
    }

    /// The two candidate successor edges of `e`.
    pub fn xy(&self, e: Edge) -> (Option<Edge>, Option<Edge>) {
        let i = self.edge_id(e) as usize;
        (
            self.x_edge[i].map(|j| self.edges[j as usize]),
            self.y_edge[i].map(|j| self.edges[j as usize]),
        )
    }

    pub fn chain_size(&self, e: Edge) -> usize {
        self.chain_size[self.edge_id(e) as usize] as usize
    }

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
        pair_is_ur_bipperm(self.g, self.ord, e, f)
    }

    /// The first vertex's edge to its earliest neighbor.
    pub fn root_edge(&self) -> Option<Edge> {
        let v1 = self.ord.vertex_at(0);
        self.gamma[v1 as usize].map(|w| Edge::new(v1, w))
    }
}

/// Maximum uniquely restricted matching of a bipartite permutation graph
/// under a transitive vertex ordering. The ordering is validated by the
/// cubic triple scan up to [`TRANSITIVE_VALIDATION_CAP`] vertices unless
/// `trust_ordering` is set; above the cap (or when trusted) only the
/// necessary side-classification check runs. Isolated vertices are dropped
/// first; each remaining component is solved independently. O(n + m) after
/// validation.
pub fn solve_bipperm_with(
    g: &UndirectedGraph,
    ord: &VertexOrdering,
    trust_ordering: bool,
) -> Result<Matching> {
    if ord.len() != g.n() {
        return Err(Error::InvalidInput("ordering length mismatch".into()));
    }
    if !trust_ordering && g.n() <= TRANSITIVE_VALIDATION_CAP {
        validate_transitive_ordering(g, ord)?;
    }
    let mut picked: Vec<Edge> = Vec::new();
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let mut by_rank = comp.clone();
        by_rank.sort_by_key(|&v| ord.rank(v));
        let (sub, to_global) = g.induced(&by_rank);
        let sub_ord = VertexOrdering::identity(sub.n());
        let ctx = match BipPermContext::new(&sub, &sub_ord) {
            Ok(ctx) => ctx,
            // Report classification failures in the caller's vertex ids.
            Err(Error::MixedSides { vertex }) => {
                return Err(Error::MixedSides {
                    vertex: to_global[vertex as usize],
                })
            }
            Err(e) => return Err(e),
        };
        let root = ctx
            .root_edge()
            .expect("non-singleton component has a root edge");
        for e in ctx.chain(root) {
            picked.push(Edge::new(
                to_global[e.a() as usize],
                to_global[e.b() as usize],
            ));
        }
    }
    Matching::new(picked)
}

/// [`solve_bipperm_with`] with automatic validation (full up to the desk
/// cap, classification-only above it).
pub fn solve_bipperm(g: &UndirectedGraph, ord: &VertexOrdering) -> Result<Matching> {
    solve_bipperm_with(g, ord, g.n() > TRANSITIVE_VALIDATION_CAP)
}
