//! Maximum strong independent sets in interval nest digraphs.
//!
//! Each vertex `u` carries a pair of closed intervals: an outer span
//! `[outer_left, outer_right]` and an inner core `[inner_left, inner_right]`
//! nested inside it. The digraph has an arc `(u, v)` iff `u`'s span meets
//! `v`'s core; a vertex set is *strong independent* when no two of its
//! members have arcs both ways.
//!
//! The solver is a memoized recurrence over triples `(u, v, x)`: the best
//! strong independent set among vertices lying strictly between `u`'s core
//! and `v`'s core whose cores start at or after `x`'s. Processing
//! candidates in core-start order, the set either skips `x`, takes `x` and
//! continues right of `x`'s core, or takes `x` and splits the window at
//! some later vertex clear of `x`'s whole span. Two dummy vertices flanking
//! everything turn the full problem into one triple.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{parse_field, significant_lines};

/// Max vertices accepted by the brute-force maximizer.
pub const SIS_BRUTEFORCE_BOUND: usize = 20;

/// An interval nest representation: per vertex the outer span and the inner
/// core, with the core nested in the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestRep {
    outer_l: Vec<i64>,
    inner_l: Vec<i64>,
    inner_r: Vec<i64>,
    outer_r: Vec<i64>,
}

impl NestRep {
    /// One `(outer_l, inner_l, inner_r, outer_r)` row per vertex; weak
    /// nesting `outer_l <= inner_l <= inner_r <= outer_r` is required.
    pub fn new(rows: Vec<(i64, i64, i64, i64)>) -> Result<Self> {
        for (u, &(ol, il, ir, or)) in rows.iter().enumerate() {
            if il > ir {
                return Err(Error::InvalidInput(format!(
                    "vertex {u}: core [{il}, {ir}] has left > right"
                )));
            }
            if il < ol || ir > or {
                return Err(Error::InvalidInput(format!(
                    "vertex {u}: core [{il}, {ir}] not inside span [{ol}, {or}]"
                )));
            }
        }
        let mut rep = NestRep {
            outer_l: Vec::with_capacity(rows.len()),
            inner_l: Vec::with_capacity(rows.len()),
            inner_r: Vec::with_capacity(rows.len()),
            outer_r: Vec::with_capacity(rows.len()),
        };
        for (ol, il, ir, or) in rows {
            rep.outer_l.push(ol);
            rep.inner_l.push(il);
            rep.inner_r.push(ir);
            rep.outer_r.push(or);
        }
        Ok(rep)
    }

    pub fn len(&self) -> usize {
        self.outer_l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outer_l.is_empty()
    }

    pub fn outer_left(&self, u: u32) -> i64 {
        self.outer_l[u as usize]
    }

    pub fn inner_left(&self, u: u32) -> i64 {
        self.inner_l[u as usize]
    }

    pub fn inner_right(&self, u: u32) -> i64 {
        self.inner_r[u as usize]
    }

    pub fn outer_right(&self, u: u32) -> i64 {
        self.outer_r[u as usize]
    }

    /// Arc `(u, v)`: `u`'s span meets `v`'s core.
    pub fn arc(&self, u: u32, v: u32) -> bool {
        self.outer_l[u as usize].max(self.inner_l[v as usize])
            <= self.outer_r[u as usize].min(self.inner_r[v as usize])
    }

    /// All `4n` endpoints are distinct integers covering `[1, 4n]`, strictly
    /// nested per vertex.
    pub fn is_normalized(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; 4 * n];
        for u in 0..n as u32 {
            let coords = [
                self.outer_left(u),
                self.inner_left(u),
                self.inner_right(u),
                self.outer_right(u),
            ];
            if coords.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for c in coords {
                if c < 1 || c > 4 * n as i64 || seen[(c - 1) as usize] {
                    return false;
                }
                seen[(c - 1) as usize] = true;
            }
        }
        true
    }

    /// Remaps endpoints to distinct integers in `[1, 4n]`, preserving every
    /// arc and non-arc. At equal coordinates, left endpoints (outer then
    /// inner) rank before right endpoints (inner then outer); within a kind
    /// lower ids rank first. Idempotent.
    pub fn normalize(&self) -> NestRep {
        let n = self.len();
        // kind: 0 outer-left, 1 inner-left, 2 inner-right, 3 outer-right.
        let mut events: Vec<(i64, u8, u32)> = Vec::with_capacity(4 * n);
        for u in 0..n as u32 {
            events.push((self.outer_left(u), 0, u));
            events.push((self.inner_left(u), 1, u));
            events.push((self.inner_right(u), 2, u));
            events.push((self.outer_right(u), 3, u));
        }
        events.sort_unstable();
        let mut out = NestRep {
            outer_l: vec![0; n],
            inner_l: vec![0; n],
            inner_r: vec![0; n],
            outer_r: vec![0; n],
        };
        for (rank, &(_, kind, u)) in events.iter().enumerate() {
            let coord = (rank + 1) as i64;
            match kind {
                0 => out.outer_l[u as usize] = coord,
                1 => out.inner_l[u as usize] = coord,
                2 => out.inner_r[u as usize] = coord,
                _ => out.outer_r[u as usize] = coord,
            }
        }
        out
    }
}

/// Appends the two flanking dummy vertices to a normalized representation:
/// one entirely left of every original span and one whose core is entirely
/// right of them, with the fixed coordinates that make the window between
/// the two dummies contain exactly the original vertices. The dummies get
/// ids `n` (left, `a`) and `n + 1` (right, `b`).
pub fn add_dummies(rep: &NestRep) -> NestRep {
    assert!(
        rep.is_normalized(),
        "add_dummies requires a normalized representation"
    );
    let n = rep.len() as i64;
    let mut out = rep.clone();
    // a
    out.outer_l.push(-4);
    out.inner_l.push(-3);
    out.inner_r.push(-1);
    out.outer_r.push(0);
    // b
    out.outer_l.push(-2);
    out.inner_l.push(4 * n + 1);
    out.inner_r.push(4 * n + 2);
    out.outer_r.push(4 * n + 3);
    out
}

/// The successor of `x` in increasing core-start order, if any.
pub fn eta(rep: &NestRep, x: u32) -> Option<u32> {
    let lx = rep.inner_left(x);
    (0..rep.len() as u32)
        .filter(|&y| rep.inner_left(y) > lx)
        .min_by_key(|&y| rep.inner_left(y))
}

/// Window membership: `y`'s whole span lies strictly between `u`'s core end
/// and `v`'s core start, guarded by the window being meaningful (`u` ends
/// before `v` starts, and `v`'s span reaches back over `u`'s core end).
pub fn in_x(rep: &NestRep, u: u32, v: u32, y: u32) -> bool {
    let (ru, lv) = (rep.inner_right(u), rep.inner_left(v));
    ru < lv && rep.outer_left(v) < ru && ru < rep.outer_left(y) && rep.outer_right(y) < lv
}

/// Window membership with a floor: `y` in the `(u, v)` window with core
/// starting at or after `x`'s. No extra guard on `x` itself: the floor
/// alone keeps the window-successor identity (the window of `u` equals the
/// floored window at `u`'s core-start successor) true even when cores
/// overlap, which the maximality argument depends on.
pub fn in_y(rep: &NestRep, u: u32, v: u32, x: u32, y: u32) -> bool {
    in_x(rep, u, v, y) && rep.inner_left(y) >= rep.inner_left(x)
}

/// `true` iff no two members of `set` have arcs both ways.
pub fn is_strong_independent(rep: &NestRep, set: &[u32]) -> bool {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if rep.arc(u, v) && rep.arc(v, u) {
                return false;
            }
        }
    }
    true
}

/// How a memo entry's set was assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    /// The window is empty.
    Empty,
    /// Same as the entry at the next core start.
    Skip,
    /// `x` plus the window right of `x`'s core.
    Take,
    /// `x`, the window between `x` and `y`, and the window from `y` on.
    TakeSplit(u32),
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    size: u32,
    choice: Choice,
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    InProgress,
    Done(Entry),
}

/// Memoized solver over a normalized representation with dummies appended.
/// Stores per-triple sizes and reconstruction choices (never the sets
/// themselves), so memory stays proportional to the number of reachable
/// triples.
pub struct SisSolver {
    rep: NestRep,
    originals: usize,
    by_core_start: Vec<u32>,
    eta_next: Vec<Option<u32>>,
    memo: HashMap<(u32, u32, u32), Slot>,
}

impl SisSolver {
    /// Normalizes `rep` and appends the dummies.
    pub fn new(rep: &NestRep) -> Self {
        let normalized = add_dummies(&rep.normalize());
        let n = normalized.len();
        let mut by_core_start: Vec<u32> = (0..n as u32).collect();
        by_core_start.sort_by_key(|&u| normalized.inner_left(u));
        let mut eta_next = vec![None; n];
        for w in by_core_start.windows(2) {
            eta_next[w[0] as usize] = Some(w[1]);
        }
        SisSolver {
            rep: normalized,
            originals: rep.len(),
            by_core_start,
            eta_next,
            memo: HashMap::new(),
        }
    }

    /// Id of the left dummy.
    pub fn a(&self) -> u32 {
        self.originals as u32
    }

    /// Id of the right dummy.
    pub fn b(&self) -> u32 {
        self.originals as u32 + 1
    }

    /// The dummied, normalized representation the solver works on.
    pub fn rep(&self) -> &NestRep {
        &self.rep
    }

    pub fn eta(&self, x: u32) -> Option<u32> {
        self.eta_next[x as usize]
    }

    /// Solves the whole instance: the root window between the dummies
    /// contains exactly the original vertices. Returns original ids,
    /// ascending.
    pub fn solve(&mut self) -> Vec<u32> {
        let (a, b) = (self.a(), self.b());
        let start = self.eta(a);
        self.compute_opt(a, b, start);
        let mut out = self.materialize_opt(a, b, start);
        assert!(
            out.iter().all(|&v| (v as usize) < self.originals),
            "dummies cannot appear in the solution"
        );
        out.sort_unstable();
        out
    }

    /// Size of the stored set for the triple `(u, v, x)`, computing it (and
    /// everything it depends on) if needed.
    pub fn compute(&mut self, u: u32, v: u32, x: u32) -> u32 {
        self.compute_opt(u, v, Some(x))
    }

    /// The stored set for `(u, v, x)`, ascending.
    pub fn stored_set(&mut self, u: u32, v: u32, x: u32) -> Vec<u32> {
        self.compute(u, v, x);
        let mut s = self.materialize_opt(u, v, Some(x));
        s.sort_unstable();
        s
    }

    fn compute_opt(&mut self, u: u32, v: u32, x_opt: Option<u32>) -> u32 {
        let Some(x) = x_opt else { return 0 };
        match self.memo.get(&(u, v, x)) {
            Some(Slot::Done(e)) => return e.size,
            Some(Slot::InProgress) => {
                panic!("recurrence re-entered triple ({u}, {v}, {x}); window failed to shrink")
            }
            None => {}
        }
        self.memo.insert((u, v, x), Slot::InProgress);

        let entry = if self.window_is_empty(u, v, x) {
            Entry {
                size: 0,
                choice: Choice::Empty,
            }
        } else {
            let ex = self.eta(x);
            let mut best = Entry {
                size: self.compute_opt(u, v, ex),
                choice: Choice::Skip,
            };
            if in_x(&self.rep, u, v, x) {
                let take = 1 + self.compute_opt(x, v, ex);
                if take > best.size {
                    best = Entry {
                        size: take,
                        choice: Choice::Take,
                    };
                }
                for y in self.split_candidates(u, v, x) {
                    let split = 1 + self.compute_opt(x, y, ex) + self.compute_opt(u, v, Some(y));
                    if split > best.size {
                        best = Entry {
                            size: split,
                            choice: Choice::TakeSplit(y),
                        };
                    }
                }
            }
            best
        };
        self.memo.insert((u, v, x), Slot::Done(entry));
        entry.size
    }

    fn window_is_empty(&self, u: u32, v: u32, x: u32) -> bool {
        !self
            .by_core_start
            .iter()
            .any(|&y| in_y(&self.rep, u, v, x, y))
    }

    /// Members of the window whose spans clear `x`'s span entirely, in
    /// increasing core-start order.
    fn split_candidates(&self, u: u32, v: u32, x: u32) -> Vec<u32> {
        self.by_core_start
            .iter()
            .copied()
            .filter(|&y| {
                in_y(&self.rep, u, v, x, y)
                    && self.rep.outer_left(y) < self.rep.inner_right(x)
                    && self.rep.outer_right(x) < self.rep.inner_left(y)
            })
            .collect()
    }

    fn materialize_opt(&self, u: u32, v: u32, x_opt: Option<u32>) -> Vec<u32> {
        let Some(x) = x_opt else { return Vec::new() };
        let Some(Slot::Done(entry)) = self.memo.get(&(u, v, x)) else {
            panic!("materializing uncomputed triple ({u}, {v}, {x})")
        };
        match entry.choice {
            Choice::Empty => Vec::new(),
            Choice::Skip => self.materialize_opt(u, v, self.eta(x)),
            Choice::Take => {
                let mut s = vec![x];
                s.extend(self.materialize_opt(x, v, self.eta(x)));
                s
            }
            Choice::TakeSplit(y) => {
                let mut s = vec![x];
                s.extend(self.materialize_opt(x, y, self.eta(x)));
                s.extend(self.materialize_opt(u, v, Some(y)));
                s
            }
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// All triples with a finished memo entry.
    pub fn computed_triples(&self) -> Vec<(u32, u32, u32)> {
        self.memo
            .iter()
            .filter(|(_, slot)| matches!(slot, Slot::Done(_)))
            .map(|(&k, _)| k)
            .collect()
    }

    /// Verifies every finished memo entry: the materialized set has the
    /// recorded size, lies inside its window, is strong independent, and
    /// every dependency strictly shrinks the window (core-start rank of `v`
    /// minus core-start rank of `x`).
    pub fn audit(&self) -> std::result::Result<(), String> {
        let rank: HashMap<u32, usize> = self
            .by_core_start
            .iter()
            .enumerate()
            .map(|(i, &u)| (u, i))
            .collect();
        let measure = |v: u32, x: u32| rank[&v] as i64 - rank[&x] as i64;
        for (&(u, v, x), slot) in &self.memo {
            let Slot::Done(entry) = slot else {
                return Err(format!("triple ({u}, {v}, {x}) left in progress"));
            };
            let set = self.materialize_opt(u, v, Some(x));
            if set.len() != entry.size as usize {
                return Err(format!(
                    "triple ({u}, {v}, {x}): materialized {} vertices, recorded {}",
                    set.len(),
                    entry.size
                ));
            }
            if !set.iter().all(|&y| in_y(&self.rep, u, v, x, y)) {
                return Err(format!("triple ({u}, {v}, {x}): set leaves its window"));
            }
            if !is_strong_independent(&self.rep, &set) {
                return Err(format!(
                    "triple ({u}, {v}, {x}): set is not strong independent"
                ));
            }
            let deps: Vec<(u32, Option<u32>)> = match entry.choice {
                Choice::Empty => vec![],
                Choice::Skip => vec![(v, self.eta(x))],
                Choice::Take => vec![(v, self.eta(x))],
                Choice::TakeSplit(y) => vec![(y, self.eta(x)), (v, Some(y))],
            };
            for (dv, dx) in deps {
                if let Some(dx) = dx {
                    if measure(dv, dx) >= measure(v, x) {
                        return Err(format!(
                            "triple ({u}, {v}, {x}): dependency window did not shrink"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Maximum strong independent set of the digraph represented by `rep`,
/// as ascending vertex ids.
pub fn max_sis(rep: &NestRep) -> Vec<u32> {
    if rep.is_empty() {
        return Vec::new();
    }
    SisSolver::new(rep).solve()
}

/// Exhaustive maximizer over all subsets, pruning supersets of dependent
/// pairs; ties break toward the lexicographically smallest id sequence.
pub fn max_sis_bruteforce(rep: &NestRep) -> Result<Vec<u32>> {
    if rep.len() > SIS_BRUTEFORCE_BOUND {
        return Err(Error::BoundExceeded {
            what: "brute-force strong-independent-set search",
            limit: SIS_BRUTEFORCE_BOUND,
            actual: rep.len(),
            hint: "use the memoized solver for larger instances",
        });
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    sis_rec(rep, 0, &mut current, &mut best);
    Ok(best)
}

fn sis_rec(rep: &NestRep, from: u32, current: &mut Vec<u32>, best: &mut Vec<u32>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for v in from..rep.len() as u32 {
        if current.iter().all(|&u| !(rep.arc(u, v) && rep.arc(v, u))) {
            current.push(v);
            sis_rec(rep, v + 1, current, best);
            current.pop();
        }
    }
}

/// Parses the `.nest` format: header `n`, then `n` lines
/// `id outer_l inner_l inner_r outer_r`.
pub fn parse_nest(text: &str) -> Result<NestRep> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty file; expected vertex count"))?;
    let n: usize = parse_field(line_no, header.split_whitespace().next(), "vertex count")?;

    let mut rows: Vec<Option<(i64, i64, i64, i64)>> = vec![None; n];
    for _ in 0..n {
        let (line_no, text) = lines
            .next()
            .ok_or_else(|| Error::parse(usize::MAX, format!("expected {n} vertex lines")))?;
        let mut it = text.split_whitespace();
        let id: usize = parse_field(line_no, it.next(), "vertex id")?;
        if id >= n {
            return Err(Error::parse(
                line_no,
                format!("vertex id {id} out of range 0..{n}"),
            ));
        }
        if rows[id].is_some() {
            return Err(Error::parse(line_no, format!("vertex {id} listed twice")));
        }
        let ol: i64 = parse_field(line_no, it.next(), "outer left endpoint")?;
        let il: i64 = parse_field(line_no, it.next(), "inner left endpoint")?;
        let ir: i64 = parse_field(line_no, it.next(), "inner right endpoint")?;
        let or: i64 = parse_field(line_no, it.next(), "outer right endpoint")?;
        rows[id] = Some((ol, il, ir, or));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(
            line_no,
            "unexpected content after the last vertex",
        ));
    }
    let rows: Vec<(i64, i64, i64, i64)> = rows
        .into_iter()
        .enumerate()
        .map(|(id, r)| r.ok_or_else(|| Error::InvalidInput(format!("vertex {id} missing"))))
        .collect::<Result<_>>()?;
    NestRep::new(rows)
}

/// Writes the `.nest` format with ids ascending and a trailing newline.
pub fn write_nest(rep: &NestRep) -> String {
    let mut out = format!("{}\n", rep.len());
    for u in 0..rep.len() as u32 {
        out.push_str(&format!(
            "{u} {} {} {} {}\n",
            rep.outer_left(u),
            rep.inner_left(u),
            rep.inner_right(u),
            rep.outer_right(u)
        ));
    }
    out
}
