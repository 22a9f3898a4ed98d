//! Deterministic fixtures, seeded instance generators, the unique-long-
//! alternating-cycle family, and the consecutive-edges baseline.
//!
//! All generators are pure functions of their arguments, seed included.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, UndirectedGraph, VertexId};
use crate::intervals::IntervalRep;
use crate::matching::Matching;
use crate::nest::NestRep;
use crate::ordering::{validate_transitive_ordering, VertexOrdering};
use crate::proper::pair_is_ur_proper;

/// A fixed demo instance: graph, the ordering it is meant to be solved
/// under, a known maximum uniquely restricted matching, and its size.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub graph: UndirectedGraph,
    pub ordering: VertexOrdering,
    pub urm: Matching,
    pub max_urm_size: usize,
}

/// The 7-vertex proper-interval demo graph (identity ordering is proper).
/// Its maximum uniquely restricted matching has 3 edges, while no matching
/// made of consecutive-vertex edges only reaches more than 2 — the instance
/// that motivates chasing non-consecutive edges.
pub fn fig1() -> Fixture {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (0, 2),
        (0, 3),
        (1, 3),
        (2, 4),
        (3, 5),
        (3, 6),
        (4, 6),
    ];
    let graph = UndirectedGraph::from_edges(7, edges).expect("fixed edge list");
    let urm = Matching::new(vec![Edge::new(0, 1), Edge::new(2, 4), Edge::new(5, 6)])
        .expect("disjoint by construction");
    Fixture {
        graph,
        ordering: VertexOrdering::identity(7),
        urm,
        max_urm_size: 3,
    }
}

/// A unit-interval realization of the [`fig1`] graph: equal-length
/// intervals listed in drawing order, so the left-endpoint ordering is the
/// identity.
pub fn fig1_intervals() -> IntervalRep {
    let lefts = [0i64, 3, 6, 9, 14, 17, 19];
    IntervalRep::new(lefts.iter().map(|&l| (l, l + 10)).collect()).expect("fixed intervals")
}

/// The 8-vertex bipartite permutation demo graph (identity ordering is
/// transitive); vertices 0 and 3 are the left side. Its maximum uniquely
/// restricted matching has 2 edges.
pub fn fig2() -> Fixture {
    let edges = [
        (0, 1),
        (0, 2),
        (0, 4),
        (0, 5),
        (3, 4),
        (3, 5),
        (3, 6),
        (3, 7),
    ];
    let graph = UndirectedGraph::from_edges(8, edges).expect("fixed edge list");
    let urm = Matching::new(vec![Edge::new(0, 1), Edge::new(3, 6)]).expect("disjoint");
    Fixture {
        graph,
        ordering: VertexOrdering::identity(8),
        urm,
        max_urm_size: 2,
    }
}

/// `n` equal-length intervals with pseudorandom lefts in `[0, span]`,
/// normalized. Equal lengths mean no strict containment, so the result is
/// always a proper representation.
pub fn gen_unit_intervals(n: usize, seed: u64, span: i64) -> IntervalRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.random_range(1..=span.max(1));
    gen_equal_length_intervals(n, &mut rng, span, len)
}

/// Like [`gen_unit_intervals`] but with a caller-fixed interval length, so
/// expected density can be held constant across sizes (benchmarks).
pub fn gen_unit_intervals_with_length(n: usize, seed: u64, span: i64, len: i64) -> IntervalRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_equal_length_intervals(n, &mut rng, span, len)
}

fn gen_equal_length_intervals(n: usize, rng: &mut ChaCha8Rng, span: i64, len: i64) -> IntervalRep {
    assert!(n >= 1, "need at least one interval");
    assert!(span >= 0 && len >= 1);
    let intervals: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let l = rng.random_range(0..=span);
            (l, l + len)
        })
        .collect();
    IntervalRep::new(intervals)
        .expect("left <= right by construction")
        .normalize()
}

/// `n` intervals with independent pseudorandom endpoints (containment
/// allowed), normalized.
pub fn gen_intervals(n: usize, seed: u64, span: i64) -> IntervalRep {
    assert!(n >= 1, "need at least one interval");
    assert!(span >= 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let intervals: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let l = rng.random_range(0..=span);
            (l, l + rng.random_range(0..=span))
        })
        .collect();
    IntervalRep::new(intervals)
        .expect("left <= right by construction")
        .normalize()
}

/// A random interval nest representation: four sorted draws per vertex.
/// Returned raw (unnormalized) so endpoint collisions exercise
/// normalization downstream.
pub fn gen_nest(n: usize, seed: u64, span: i64) -> NestRep {
    assert!(span >= 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<(i64, i64, i64, i64)> = (0..n)
        .map(|_| {
            let mut c = [0i64; 4];
            for x in &mut c {
                *x = rng.random_range(0..=span);
            }
            c.sort_unstable();
            (c[0], c[1], c[2], c[3])
        })
        .collect();
    NestRep::new(rows).expect("sorted draws nest properly")
}

/// Builds a bipartite permutation instance from explicit neighbor windows:
/// left vertex `i` is adjacent to right vertices `windows[i].0..=windows[i].1`
/// (indices into `0..q`). Window starts and ends must both be weakly
/// increasing, windows nonempty and collectively gap-free from 0 to `q - 1`.
/// Vertices are interleaved so each one precedes exactly its later
/// neighbors; ids follow ordering positions, so the returned ordering is
/// the identity and is always transitive.
pub fn bipperm_from_windows(
    q: usize,
    windows: &[(usize, usize)],
) -> (UndirectedGraph, VertexOrdering) {
    let p = windows.len();
    assert!(p >= 1 && q >= 1);
    let mut prev = (0usize, 0usize);
    for (i, &(s, e)) in windows.iter().enumerate() {
        assert!(s <= e && e < q, "window {i} out of range");
        assert!(
            i == 0 || (prev.0 <= s && prev.1 <= e),
            "windows must be monotone"
        );
        assert!(
            if i == 0 { s == 0 } else { s <= prev.1 + 1 },
            "windows must be gap-free"
        );
        prev = (s, e);
    }
    assert_eq!(prev.1, q - 1, "windows must cover the last right vertex");

    // Merge: each left vertex is emitted just before its first right
    // neighbor; each right vertex after every left whose window reaches it.
    let mut order_sides: Vec<(bool, usize)> = Vec::with_capacity(p + q); // (is_left, side index)
    let mut li = 0usize;
    for j in 0..q {
        while li < p && windows[li].0 <= j {
            order_sides.push((true, li));
            li += 1;
        }
        order_sides.push((false, j));
    }

    let n = p + q;
    let mut left_id = vec![0u32; p];
    let mut right_id = vec![0u32; q];
    for (pos, &(is_left, idx)) in order_sides.iter().enumerate() {
        if is_left {
            left_id[idx] = pos as u32;
        } else {
            right_id[idx] = pos as u32;
        }
    }
    let mut edges = Vec::new();
    for (i, &(s, e)) in windows.iter().enumerate() {
        for j in s..=e {
            edges.push((left_id[i], right_id[j]));
        }
    }
    let graph = UndirectedGraph::from_edges(n, edges).expect("ids in range, no loops");
    let ordering = VertexOrdering::identity(n);
    if n <= crate::ordering::TRANSITIVE_VALIDATION_CAP {
        validate_transitive_ordering(&graph, &ordering)
            .expect("window construction must produce transitive orderings");
    }
    (graph, ordering)
}

/// A random bipartite permutation instance: `p` left vertices with
/// contiguous right-neighbor windows whose starts and ends both increase
/// weakly along the ordering (see [`bipperm_from_windows`]).
pub fn gen_bipperm(p: usize, q: usize, seed: u64) -> (UndirectedGraph, VertexOrdering) {
    assert!(p >= 1 && q >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut starts: Vec<usize> = (0..p).map(|_| rng.random_range(0..q)).collect();
    starts.sort_unstable();
    starts[0] = 0;
    let mut windows = Vec::with_capacity(p);
    let mut prev_end = 0usize;
    for i in 0..p {
        let start = if i > 0 && starts[i] > prev_end + 1 {
            prev_end + 1
        } else {
            starts[i]
        };
        let end = if i == p - 1 {
            q - 1
        } else {
            rng.random_range(start..q).max(start).max(prev_end)
        };
        windows.push((start, end));
        prev_end = end;
    }
    bipperm_from_windows(q, &windows)
}

/// A graph with a matching whose only alternating cycle is a single
/// Hamiltonian cycle of prescribed even length `k >= 4`: the even cycle
/// `0, 1, 3, 5, ..., k-3, k-1, k-2, k-4, ..., 2, 0` plus, for `k >= 6`, the
/// rungs `(2i-1, 2i)`. The matching takes every second cycle edge starting
/// with `(0, 1)`; it is not uniquely restricted, and the Hamiltonian cycle
/// is the unique witness.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub k: usize,
    pub graph: UndirectedGraph,
    pub matching: Matching,
}

pub fn gen_family(k: usize) -> Result<FamilyInstance> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "family parameter must be an even integer >= 4, got {k}"
        )));
    }
    // Cycle order: 0, then odd ids ascending, then even ids descending.
    let mut cycle: Vec<VertexId> = vec![0];
    cycle.extend((1..k as VertexId).filter(|v| v % 2 == 1));
    cycle.extend((2..k as VertexId).filter(|v| v % 2 == 0).rev());

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for i in 0..k {
        edges.push((cycle[i], cycle[(i + 1) % k]));
    }
    if k >= 6 {
        for i in 1..k / 2 {
            edges.push(((2 * i - 1) as VertexId, (2 * i) as VertexId));
        }
    }
    let graph = UndirectedGraph::from_edges(k, edges)?;
    let matching = Matching::new(
        (0..k)
            .step_by(2)
            .map(|i| Edge::new(cycle[i], cycle[(i + 1) % k]))
            .collect(),
    )?;
    Ok(FamilyInstance { k, graph, matching })
}

/// Best possible output of a solver restricted to consecutive-vertex edges:
/// the maximum uniquely restricted matching among matchings whose every
/// edge joins ordering-adjacent vertices. Computed exactly by a quadratic
/// chain DP over the consecutive edges (uniqueness reduces to consecutive
/// chosen pairs under a proper ordering).
pub fn consecutive_heuristic_baseline(
    g: &UndirectedGraph,
    ord: &VertexOrdering,
) -> Result<Matching> {
    crate::ordering::validate_proper_ordering(g, ord)?;
    let n = g.n();
    let mut cands: Vec<Edge> = Vec::new();
    for rank in 0..n.saturating_sub(1) {
        let (u, v) = (ord.vertex_at(rank), ord.vertex_at(rank + 1));
        if g.has_edge(u, v) {
            cands.push(Edge::new(u, v));
        }
    }
    // best[i]: size of the best chain ending at candidate i; prev[i]: its
    // predecessor, preferring smaller indices on ties.
    let mut best = vec![1u32; cands.len()];
    let mut prev: Vec<Option<usize>> = vec![None; cands.len()];
    for i in 0..cands.len() {
        for j in 0..i {
            if cands[j].shares_vertex(cands[i]) || !pair_is_ur_proper(g, ord, cands[j], cands[i]) {
                continue;
            }
            if best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                prev[i] = Some(j);
            }
        }
    }
    let Some(mut at) = (0..cands.len()).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
        return Ok(Matching::empty());
    };
    let mut picked = Vec::with_capacity(best[at] as usize);
    loop {
        picked.push(cands[at]);
        match prev[at] {
            Some(j) => at = j,
            None => break,
        }
    }
    picked.reverse();
    Matching::new(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipperm::classify_sides;
    use crate::intervals::{intersection_graph, ordering_from_proper_rep};
    use crate::ordering::validate_proper_ordering;
    use crate::verify::{enumerate_alternating_cycles, is_ur_oracle, max_urm_bruteforce};

    #[test]
    fn fig1_matches_its_contract() {
        let fx = fig1();
        assert_eq!(fx.graph.n(), 7);
        assert_eq!(fx.graph.m(), 13);
        assert_eq!(fx.graph.degree_sequence(), vec![3, 3, 4, 6, 4, 3, 3]);
        assert_eq!(fx.graph.connected_components().len(), 1);
        assert!(validate_proper_ordering(&fx.graph, &fx.ordering).is_ok());
        assert!(is_ur_oracle(&fx.graph, fx.urm.edges()).unwrap());
        assert_eq!(
            max_urm_bruteforce(&fx.graph).unwrap().len(),
            fx.max_urm_size
        );
    }

    #[test]
    fn fig1_pairwise_and_consecutive_checks() {
        use crate::proper::pair_is_ur_proper;
        use crate::verify::{
            is_matching, is_ur_c4free, is_ur_consecutive, pair_has_alt_c4, ConsecutiveCheck,
        };
        let fx = fig1();
        let (g, ord) = (&fx.graph, &fx.ordering);
        assert!(is_matching(g, fx.urm.edges()).unwrap());
        // The 2-4 nested pair sits on a common 4-cycle; the bold set does not.
        assert!(pair_has_alt_c4(g, Edge::new(0, 1), Edge::new(2, 3)).unwrap());
        assert!(is_ur_c4free(g, fx.urm.edges()).unwrap());
        assert!(!is_ur_c4free(g, &[Edge::new(0, 1), Edge::new(2, 3)]).unwrap());
        // Consecutive-pair check: the bold set passes, 01/23/45 fails at its
        // first pair.
        let pred = |e: Edge, f: Edge| pair_is_ur_proper(g, ord, e, f);
        assert!(is_ur_consecutive(g, ord, fx.urm.edges(), pred)
            .unwrap()
            .is_ur());
        let bad = [Edge::new(0, 1), Edge::new(2, 3), Edge::new(4, 5)];
        assert_eq!(
            is_ur_consecutive(g, ord, &bad, pred).unwrap(),
            ConsecutiveCheck::FailsAt(Edge::new(0, 1), Edge::new(2, 3))
        );
    }

    #[test]
    fn fig1_intervals_realize_fig1() {
        let rep = fig1_intervals();
        assert_eq!(intersection_graph(&rep), fig1().graph);
        let ord = ordering_from_proper_rep(&rep).unwrap();
        assert_eq!(ord.vertices(), fig1().ordering.vertices());
    }

    #[test]
    fn fig2_matches_its_contract() {
        let fx = fig2();
        assert!(validate_transitive_ordering(&fx.graph, &fx.ordering).is_ok());
        let sides = classify_sides(&fx.graph, &fx.ordering).unwrap();
        let lefts: Vec<u32> = (0..8).filter(|&v| sides[v as usize].is_left()).collect();
        assert_eq!(lefts, vec![0, 3]);
        assert_eq!(max_urm_bruteforce(&fx.graph).unwrap().len(), 2);
        assert!(is_ur_oracle(&fx.graph, fx.urm.edges()).unwrap());
    }

    #[test]
    fn generators_are_seed_stable() {
        assert_eq!(gen_unit_intervals(6, 9, 30), gen_unit_intervals(6, 9, 30));
        assert_eq!(gen_intervals(6, 9, 30), gen_intervals(6, 9, 30));
        let (g1, o1) = gen_bipperm(3, 4, 7);
        let (g2, o2) = gen_bipperm(3, 4, 7);
        assert_eq!(g1, g2);
        assert_eq!(o1.vertices(), o2.vertices());
    }

    #[test]
    fn unit_intervals_are_proper() {
        for seed in 0..25 {
            let rep = gen_unit_intervals(8, seed, 20);
            assert!(ordering_from_proper_rep(&rep).is_ok(), "seed {seed}");
        }
        let single = gen_unit_intervals(1, 0, 10);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn bipperm_generator_classifies_exactly_p_lefts() {
        for seed in 0..25 {
            let (g, ord) = gen_bipperm(3, 5, seed);
            let sides = classify_sides(&g, &ord).unwrap();
            let lefts = sides.iter().filter(|s| s.is_left()).count();
            assert_eq!(lefts, 3, "seed {seed}");
        }
        let (k2, _) = gen_bipperm(1, 1, 0);
        assert_eq!(k2.m(), 1);
    }

    #[test]
    fn family_k4_is_c4_with_perfect_matching() {
        let fam = gen_family(4).unwrap();
        assert_eq!(fam.graph.m(), 4);
        assert_eq!(fam.matching.len(), 2);
        let cycles = enumerate_alternating_cycles(&fam.graph, fam.matching.edges(), 4).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
        assert!(gen_family(5).is_err());
        assert!(gen_family(2).is_err());
    }

    #[test]
    fn family_other_phase_also_has_unique_cycle() {
        // The complementary alternation phase of the Hamiltonian cycle is a
        // matching with the same unique-cycle property.
        for k in [6usize, 8, 10] {
            let fam = gen_family(k).unwrap();
            let mut cycle: Vec<u32> = vec![0];
            cycle.extend((1..k as u32).filter(|v| v % 2 == 1));
            cycle.extend((2..k as u32).filter(|v| v % 2 == 0).rev());
            let other: Vec<Edge> = (1..k)
                .step_by(2)
                .map(|i| Edge::new(cycle[i], cycle[(i + 1) % k]))
                .collect();
            let other = Matching::new(other).unwrap();
            let cycles = enumerate_alternating_cycles(&fam.graph, other.edges(), k).unwrap();
            assert_eq!(cycles.len(), 1, "k={k}");
            assert_eq!(cycles[0].len(), k, "k={k}");
        }
    }

    #[test]
    fn extreme_neighbors_on_the_fixtures() {
        let fx = fig1();
        let lr = crate::ordering::compute_lambda_rho(&fx.graph, &fx.ordering);
        assert_eq!(lr.rho(0), 3);
        assert_eq!(lr.rho(1), 3);
        assert_eq!(lr.lambda(4), 2);
        assert_eq!(lr.rho(3), 6);

        let fx = fig2();
        let lr = crate::ordering::compute_lambda_rho(&fx.graph, &fx.ordering);
        assert_eq!(lr.rho(0), 5);
        assert_eq!(lr.lambda(4), 0);
    }

    #[test]
    fn family_k6_matches_expected_sets() {
        let fam = gen_family(6).unwrap();
        let expect = UndirectedGraph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (3, 4),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert_eq!(fam.graph, expect);
        assert_eq!(
            fam.matching.edges(),
            &[Edge::new(0, 1), Edge::new(2, 4), Edge::new(3, 5)]
        );
    }

    #[test]
    fn baseline_on_fig1_is_two() {
        let fx = fig1();
        let base = consecutive_heuristic_baseline(&fx.graph, &fx.ordering).unwrap();
        assert!(base.len() <= 2);
        assert_eq!(base.len(), 2);
        assert!(is_ur_oracle(&fx.graph, base.edges()).unwrap());
    }

    #[test]
    fn baseline_on_paths() {
        // Oracle: exhaust subsets of consecutive edges and keep the best
        // uniquely restricted one.
        fn oracle(g: &UndirectedGraph, ord: &VertexOrdering) -> usize {
            let cands: Vec<Edge> = (0..g.n() - 1)
                .filter_map(|r| {
                    let (u, v) = (ord.vertex_at(r), ord.vertex_at(r + 1));
                    g.has_edge(u, v).then(|| Edge::new(u, v))
                })
                .collect();
            let mut best = 0;
            for mask in 0u32..1 << cands.len() {
                let subset: Vec<Edge> = (0..cands.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| cands[i])
                    .collect();
                if crate::verify::is_matching(g, &subset).unwrap()
                    && is_ur_oracle(g, &subset).unwrap()
                {
                    best = best.max(subset.len());
                }
            }
            best
        }

        for n in [2usize, 4, 6] {
            let g = UndirectedGraph::from_edges(n, (0..n - 1).map(|i| (i as u32, i as u32 + 1)))
                .unwrap();
            let ord = VertexOrdering::identity(n);
            let base = consecutive_heuristic_baseline(&g, &ord).unwrap();
            assert_eq!(base.len(), oracle(&g, &ord), "path on {n} vertices");
        }
    }
}
