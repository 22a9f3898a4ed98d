//! Vertex orderings and the two ordering validators (proper and transitive),
//! plus per-vertex extreme neighbors under an ordering.

use crate::error::{Error, Result, TransitiveViolation};
use crate::graph::{UndirectedGraph, VertexId};

/// A total order on the vertices `0..n` with O(1) rank lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<VertexId>,
    pos: Vec<u32>,
}

impl VertexOrdering {
    /// `order[i]` is the vertex at rank `i`; must be a permutation of `0..n`.
    pub fn new(order: Vec<VertexId>) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![u32::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "vertex id {v} out of range 0..{n}"
                )));
            }
            if pos[v as usize] != u32::MAX {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice")));
            }
            pos[v as usize] = i as u32;
        }
        Ok(VertexOrdering { order, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n as VertexId).collect(),
            pos: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex_at(&self, rank: usize) -> VertexId {
        self.order[rank]
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.pos[v as usize] as usize
    }

    /// All vertices in rank order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    /// `true` when `u` comes before `v`.
    pub fn before(&self, u: VertexId, v: VertexId) -> bool {
        self.rank(u) < self.rank(v)
    }

    /// The lower/higher-ranked endpoint of an edge.
    pub fn edge_lo(&self, e: crate::graph::Edge) -> VertexId {
        let (a, b) = e.endpoints();
        if self.before(a, b) {
            a
        } else {
            b
        }
    }

    pub fn edge_hi(&self, e: crate::graph::Edge) -> VertexId {
        let (a, b) = e.endpoints();
        if self.before(a, b) {
            b
        } else {
            a
        }
    }
}

/// Per-vertex minimum and maximum of `N(u) ∪ {u}` under an ordering.
#[derive(Clone, Debug)]
pub struct LambdaRho {
    lambda: Vec<VertexId>,
    rho: Vec<VertexId>,
}

impl LambdaRho {
    /// Earliest of `N(u) ∪ {u}` in the ordering.
    pub fn lambda(&self, u: VertexId) -> VertexId {
        self.lambda[u as usize]
    }

    /// Latest of `N(u) ∪ {u}` in the ordering.
    pub fn rho(&self, u: VertexId) -> VertexId {
        self.rho[u as usize]
    }
}

pub fn compute_lambda_rho(g: &UndirectedGraph, ord: &VertexOrdering) -> LambdaRho {
    let n = g.n();
    assert_eq!(ord.len(), n, "ordering must cover all vertices");
    let mut lambda = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    for u in 0..n as VertexId {
        let mut lo = u;
        let mut hi = u;
        for &w in g.neighbors(u) {
            if ord.before(w, lo) {
                lo = w;
            }
            if ord.before(hi, w) {
                hi = w;
            }
        }
        lambda.push(lo);
        rho.push(hi);
    }
    LambdaRho { lambda, rho }
}

/// Checks that `ord` is a proper vertex ordering of `g`: every neighborhood
/// is a contiguous rank range around its vertex. Runs in O(n + m); on
/// failure returns a witness triple `u < v < w` (by rank) with edge `uw`
/// present but `v` not adjacent to both.
pub fn validate_proper_ordering(g: &UndirectedGraph, ord: &VertexOrdering) -> Result<()> {
    if ord.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "ordering covers {} vertices, graph has {}",
            ord.len(),
            g.n()
        )));
    }
    let lr = compute_lambda_rho(g, ord);
    for rank in 0..ord.len() {
        let u = ord.vertex_at(rank);
        let span = ord.rank(lr.rho(u)) - ord.rank(lr.lambda(u));
        if g.degree(u) == span {
            continue;
        }
        // A hole exists: some non-neighbor strictly inside the span.
        for r in ord.rank(lr.lambda(u))..=ord.rank(lr.rho(u)) {
            let x = ord.vertex_at(r);
            if x != u && !g.has_edge(u, x) {
                return Err(if r < rank {
                    Error::NotProperOrdering {
                        u: lr.lambda(u),
                        v: x,
                        w: u,
                    }
                } else {
                    Error::NotProperOrdering {
                        u,
                        v: x,
                        w: lr.rho(u),
                    }
                });
            }
        }
        unreachable!("degree/span mismatch implies a hole in the span");
    }
    Ok(())
}

/// Cap for the cubic transitive-ordering validator; it is a desk-scale tool,
/// not part of any solve path.
pub const TRANSITIVE_VALIDATION_CAP: usize = 2000;

/// Checks both transitive-ordering conditions over all rank triples
/// `u < v < w`: (closure) `uv, vw ∈ E ⇒ uw ∈ E`, and (betweenness)
/// `uw ∈ E ⇒ uv ∈ E or vw ∈ E`. Returns the lexicographically first
/// violating triple. Refuses graphs above [`TRANSITIVE_VALIDATION_CAP`].
pub fn validate_transitive_ordering(g: &UndirectedGraph, ord: &VertexOrdering) -> Result<()> {
    if ord.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "ordering covers {} vertices, graph has {}",
            ord.len(),
            g.n()
        )));
    }
    let n = g.n();
    if n > TRANSITIVE_VALIDATION_CAP {
        return Err(Error::BoundExceeded {
            what: "transitive-ordering validation (cubic triple scan)",
            limit: TRANSITIVE_VALIDATION_CAP,
            actual: n,
            hint: "supply a trusted ordering instead of validating",
        });
    }

    // Rank-space adjacency bitsets; the triple scan is the definition, the
    // words just batch the innermost loop.
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    for u in 0..n as VertexId {
        let ru = ord.rank(u);
        for &v in g.neighbors(u) {
            let rv = ord.rank(v);
            rows[ru * words + rv / 64] |= 1u64 << (rv % 64);
        }
    }
    let row = |i: usize| &rows[i * words..(i + 1) * words];
    let has = |i: usize, j: usize| rows[i * words + j / 64] >> (j % 64) & 1 == 1;

    for i in 0..n {
        for j in i + 1..n {
            // Exactly one condition can fail for a fixed pair (i, j): with
            // ij present only closure, without it only betweenness. Scan for
            // the first rank k > j violating it.
            let (ri, rj) = (row(i), row(j));
            let ij = has(i, j);
            let start = j + 1;
            for w in start / 64..words {
                let mut bad = if ij { rj[w] & !ri[w] } else { ri[w] & !rj[w] };
                if w == start / 64 && start % 64 != 0 {
                    bad &= u64::MAX << (start % 64);
                }
                if bad != 0 {
                    let k = w * 64 + bad.trailing_zeros() as usize;
                    let kind = if ij {
                        TransitiveViolation::Closure
                    } else {
                        TransitiveViolation::Betweenness
                    };
                    return Err(Error::NotTransitiveOrdering {
                        u: ord.vertex_at(i),
                        v: ord.vertex_at(j),
                        w: ord.vertex_at(k),
                        kind,
                    });
                }
            }
        }
    }
    Ok(())
}
