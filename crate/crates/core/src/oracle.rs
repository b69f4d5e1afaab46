//! Exact brute-force references: maximum cut, maximum edge-disjoint triangle
//! packing, and chordality. Ground truth for the test suites.
//!
//! Every call is budgeted. A call over budget is rejected outright rather
//! than silently approximated.

use crate::graph::{Graph, SplitPartition};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Cap on vertex count for exact max-cut enumeration.
    pub max_vertices_cut: usize,
    /// Cap on edge count for exact packing search.
    pub max_edges_packing: usize,
    /// Optional wall-clock limit per call.
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices_cut: 22,
            max_edges_packing: 30,
            time_limit: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("instance has {got} vertices, exact max-cut budget is {cap}")]
    TooManyVertices { got: usize, cap: usize },
    #[error("instance has {got} edges, exact packing budget is {cap}")]
    TooManyEdges { got: usize, cap: usize },
    #[error("time limit of {0:?} exceeded")]
    TimeLimit(Duration),
}

/// Exact maximum cut by enumerating all `2^(n-1)` bipartitions with vertex 0
/// fixed to side `false`. Gray-code stepping keeps each candidate O(1):
/// flipping one vertex changes the cut by `deg(v) - 2 * |N(v) ∩ other side|`
/// read off a pair of bitmask popcounts.
///
/// Returns the maximum and the lexicographically smallest witness side
/// bitstring among maximizers.
pub fn exact_maxcut(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<bool>), BudgetError> {
    let n = g.n();
    if n > budget.max_vertices_cut {
        return Err(BudgetError::TooManyVertices { got: n, cap: budget.max_vertices_cut });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let start = Instant::now();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();

    let mut side: u64 = 0; // bit v set <=> side(v) = true; vertex 0 stays false
    let mut cut: usize = 0;
    let mut best = cut;
    let mut best_side = side;

    let total: u64 = 1u64 << (n - 1);
    for i in 1..total {
        // Gray code: step i flips free vertex (trailing zeros of i) + 1.
        let v = i.trailing_zeros() as usize + 1;
        let crossing_before = if side >> v & 1 == 1 {
            (adj[v] & !side).count_ones() as usize
        } else {
            (adj[v] & side).count_ones() as usize
        };
        cut = cut + g.degree(v) - 2 * crossing_before;
        side ^= 1 << v;
        if cut > best || (cut == best && lex_less(side, best_side, n)) {
            best = cut;
            best_side = side;
        }
        if let Some(limit) = budget.time_limit {
            if i % 65_536 == 0 && start.elapsed() > limit {
                return Err(BudgetError::TimeLimit(limit));
            }
        }
    }
    let witness = (0..n).map(|v| best_side >> v & 1 == 1).collect();
    Ok((best, witness))
}

/// Lexicographic order on side bitstrings `s_0 s_1 ... s_{n-1}`.
fn lex_less(a: u64, b: u64, n: usize) -> bool {
    for v in 0..n {
        let (x, y) = (a >> v & 1, b >> v & 1);
        if x != y {
            return x < y;
        }
    }
    false
}

/// Exact maximum cut of a split graph via its structure: enumerate the
/// clique side's `2^(|K|-1)` bipartitions; each independent vertex then
/// greedily picks the side that crosses more of its edges (ties to `false`).
///
/// The budget's vertex cap applies to `|K|`, which is what the enumeration
/// actually scales in; this stays exact far beyond plain enumeration.
pub fn exact_maxcut_split(
    g: &Graph,
    part: &SplitPartition,
    budget: &OracleBudget,
) -> Result<(usize, Vec<bool>), BudgetError> {
    part.validate(g).expect("partition must be valid for g");
    let k = part.clique().len();
    if k > budget.max_vertices_cut {
        return Err(BudgetError::TooManyVertices { got: k, cap: budget.max_vertices_cut });
    }
    let kv = part.clique();
    let start = Instant::now();

    let mut best = 0usize;
    let mut best_side: Option<Vec<bool>> = None;
    let total: u64 = 1u64 << k.saturating_sub(1);
    for mask in 0..total.max(1) {
        let mut side = vec![false; g.n()];
        for (i, &v) in kv.iter().enumerate() {
            // kv[0] stays false; complement symmetry loses nothing.
            if i > 0 && mask >> (i - 1) & 1 == 1 {
                side[v] = true;
            }
        }
        let mut value = 0usize;
        for (i, &u) in kv.iter().enumerate() {
            for &v in &kv[i + 1..] {
                if side[u] != side[v] {
                    value += 1;
                }
            }
        }
        for &u in part.independent() {
            let on_true = g.neighbors(u).iter().filter(|&&w| side[w]).count();
            let on_false = g.degree(u) - on_true;
            // Putting u on side false crosses its on_true edges and
            // vice versa; the greedy choice is independent per vertex.
            if on_false > on_true {
                side[u] = true;
                value += on_false;
            } else {
                value += on_true;
            }
        }
        if value > best || best_side.is_none() {
            best = value;
            best_side = Some(side);
        }
        if let Some(limit) = budget.time_limit {
            if mask % 4096 == 0 && start.elapsed() > limit {
                return Err(BudgetError::TimeLimit(limit));
            }
        }
    }
    Ok((best, best_side.unwrap_or_default()))
}

/// Exact maximum edge-disjoint triangle packing size by backtracking over
/// triangles in lexicographic order with an edge-usage bitmask. A greedy
/// first pass seeds the lower bound for pruning.
pub fn exact_triangle_packing(g: &Graph, budget: &OracleBudget) -> Result<usize, BudgetError> {
    let m = g.m();
    if m > budget.max_edges_packing {
        return Err(BudgetError::TooManyEdges { got: m, cap: budget.max_edges_packing });
    }
    let edge_index: std::collections::HashMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for u in 0..g.n() {
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            if v < u {
                continue;
            }
            for &w in &g.neighbors(u)[i + 1..] {
                if g.has_edge(v, w) {
                    triangles.push([u, v, w]);
                }
            }
        }
    }
    triangles.sort_unstable();
    let tri_masks: Vec<u32> = triangles
        .iter()
        .map(|t| {
            let mut mask = 0u32;
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                mask |= 1 << edge_index[&(a.min(b), a.max(b))];
            }
            mask
        })
        .collect();

    // Greedy seed.
    let mut used = 0u32;
    let mut greedy = 0usize;
    for &mask in &tri_masks {
        if used & mask == 0 {
            used |= mask;
            greedy += 1;
        }
    }

    let start = Instant::now();
    let mut best = greedy;
    backtrack(&tri_masks, 0, 0u32, 0, &mut best, budget.time_limit, start)?;
    Ok(best)
}

fn backtrack(
    tris: &[u32],
    from: usize,
    used: u32,
    chosen: usize,
    best: &mut usize,
    limit: Option<Duration>,
    start: Instant,
) -> Result<(), BudgetError> {
    if chosen > *best {
        *best = chosen;
    }
    // Even if every remaining triangle fit, can we beat best?
    if chosen + (tris.len() - from) <= *best {
        return Ok(());
    }
    if let Some(lim) = limit {
        if start.elapsed() > lim {
            return Err(BudgetError::TimeLimit(lim));
        }
    }
    for i in from..tris.len() {
        if used & tris[i] == 0 {
            backtrack(tris, i + 1, used | tris[i], chosen + 1, best, limit, start)?;
        }
    }
    Ok(())
}

/// Chordality test: maximum-cardinality search produces an ordering, then
/// the reverse order is checked as a perfect elimination ordering (each
/// vertex's later neighbors must form a clique).
///
/// Returns the verdict together with the candidate elimination order.
pub fn is_chordal(g: &Graph) -> (bool, Vec<usize>) {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut mcs_order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], usize::MAX - v))
            .expect("unvisited vertex exists");
        visited[v] = true;
        mcs_order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    // Elimination order = reverse of the MCS visit order.
    let elim: Vec<usize> = mcs_order.into_iter().rev().collect();
    let mut pos = vec![0usize; n];
    for (i, &v) in elim.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &elim {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                if !g.has_edge(a, b) {
                    return (false, elim);
                }
            }
        }
    }
    (true, elim)
}
