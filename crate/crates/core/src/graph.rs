//! Simple undirected graphs with dense integer vertex ids, plus the cut and
//! split-partition machinery everything else builds on.
//!
//! Vertex ids are `0..n`. All tie-breaking and iteration order is by id, so
//! every operation here is deterministic.

use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
}

/// Immutable simple graph. Edges are stored as `(u, v)` with `u < v`, sorted
/// lexicographically; adjacency lists are sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(
        n: usize,
        edge_iter: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edge_iter {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { v: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop { v: a });
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::new(self.n, edges).expect("complement of a simple graph is simple")
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        count
    }
}

/// Where a cut came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    StructuralCut,
    BridgeAugmented,
    GwRound,
    PerturbedRound,
    Oracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::StructuralCut => "structural-cut",
            Provenance::BridgeAugmented => "bridge-augmented",
            Provenance::GwRound => "gw-round",
            Provenance::PerturbedRound => "perturbed-round",
            Provenance::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// A vertex bipartition with its crossing-edge count. The size is always
/// recomputed from the graph at construction, never trusted from a caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    side: Vec<bool>,
    size: usize,
    provenance: Provenance,
}

impl Cut {
    pub fn from_side(g: &Graph, side: Vec<bool>, provenance: Provenance) -> Cut {
        assert_eq!(side.len(), g.n(), "side must assign every vertex");
        let size = cut_size(g, &side);
        Cut { side, size, provenance }
    }

    pub fn side(&self) -> &[bool] {
        &self.side
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Side assignment rendered as a `0`/`1` string indexed by vertex id.
    pub fn side_bitstring(&self) -> String {
        self.side.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Number of edges with endpoints on different sides.
pub fn cut_size(g: &Graph, side: &[bool]) -> usize {
    assert_eq!(side.len(), g.n(), "side must assign every vertex");
    g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count()
}

/// Bridges of `g` (edges whose removal increases the number of connected
/// components), sorted lexicographically. One iterative low-link traversal
/// per component.
pub fn find_bridges(g: &Graph) -> Vec<(usize, usize)> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![UNSEEN; n];
    let mut timer = 0usize;
    let mut bridges = Vec::new();
    // Frames: (vertex, parent, next neighbor index).
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, UNSEEN, 0));
        while !stack.is_empty() {
            let (v, parent, idx) = {
                let frame = stack.last_mut().expect("stack nonempty");
                let out = (frame.0, frame.1, frame.2);
                if out.2 < g.degree(out.0) {
                    frame.2 += 1;
                }
                out
            };
            if idx < g.degree(v) {
                let u = g.neighbors(v)[idx];
                if u == parent {
                    continue; // simple graph: exactly one edge back to parent
                }
                if disc[u] == UNSEEN {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, v, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges.push((p.min(v), p.max(v)));
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoColorError {
    #[error("edge ({0}, {1}) is not an edge of the graph", edge.0, edge.1)]
    MissingEdge { edge: (usize, usize) },
    #[error(
        "edge subset is not bipartite: edge ({0}, {1}) closes an odd cycle",
        edge.0, edge.1
    )]
    OddCycle { edge: (usize, usize) },
}

/// 2-colors the subgraph `(V, edge_subset)` so that every subset edge
/// crosses. Vertices touched by no subset edge get side `false`; each
/// component root (smallest id) also gets `false`.
///
/// An odd cycle is an internal-consistency violation for callers that pass
/// certified-bipartite subsets, so it is reported rather than patched over.
pub fn two_color_edge_set(
    g: &Graph,
    edge_subset: &[(usize, usize)],
) -> Result<Vec<bool>, TwoColorError> {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edge_subset {
        if !g.has_edge(a, b) {
            return Err(TwoColorError::MissingEdge { edge: (a.min(b), a.max(b)) });
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start].is_some() || adj[start].is_empty() {
            continue;
        }
        side[start] = Some(false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].expect("queued vertices are colored");
            for &u in &adj[v] {
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        queue.push_back(u);
                    }
                    Some(su) if su == sv => {
                        return Err(TwoColorError::OddCycle {
                            edge: (u.min(v), u.max(v)),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("degree sequence fails the split characterization")]
    NotSplit,
    #[error("partition repair could not certify a clique/independent split")]
    RepairFailed,
    #[error("clique side has a missing edge ({0}, {1})", edge.0, edge.1)]
    CliqueMissingEdge { edge: (usize, usize) },
    #[error("independent side has an edge ({0}, {1})", edge.0, edge.1)]
    IndependentHasEdge { edge: (usize, usize) },
    #[error("partition does not cover every vertex exactly once")]
    NotAPartition,
}

/// Partition of the vertex set into a clique and an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    clique: Vec<usize>,
    independent: Vec<usize>,
}

impl SplitPartition {
    /// Builds a partition and validates it against `g`.
    pub fn new(
        g: &Graph,
        mut clique: Vec<usize>,
        mut independent: Vec<usize>,
    ) -> Result<Self, SplitError> {
        clique.sort_unstable();
        independent.sort_unstable();
        let part = SplitPartition { clique, independent };
        part.validate(g)?;
        Ok(part)
    }

    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    /// Membership-in-clique indicator by vertex id.
    pub fn clique_side(&self, n: usize) -> Vec<bool> {
        let mut side = vec![false; n];
        for &v in &self.clique {
            side[v] = true;
        }
        side
    }

    pub fn validate(&self, g: &Graph) -> Result<(), SplitError> {
        let n = g.n();
        let mut seen = vec![0u8; n];
        for &v in self.clique.iter().chain(self.independent.iter()) {
            if v >= n {
                return Err(SplitError::NotAPartition);
            }
            seen[v] += 1;
        }
        if seen.iter().any(|&c| c != 1) {
            return Err(SplitError::NotAPartition);
        }
        for (i, &u) in self.clique.iter().enumerate() {
            for &v in &self.clique[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(SplitError::CliqueMissingEdge { edge: (u, v) });
                }
            }
        }
        for (i, &u) in self.independent.iter().enumerate() {
            for &v in &self.independent[i + 1..] {
                if g.has_edge(u, v) {
                    return Err(SplitError::IndependentHasEdge { edge: (u, v) });
                }
            }
        }
        Ok(())
    }
}

/// Detects whether `g` is a split graph and returns a witness partition.
///
/// Uses the degree-sequence characterization: with degrees sorted
/// `d_1 >= ... >= d_n` and `m = max{i : d_i >= i - 1}`, the graph is split
/// iff `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`. The `m` highest-degree
/// vertices seed the clique; a repair pass then moves any clique vertex that
/// is non-adjacent within the clique over to the independent side when that
/// is legal (borderline vertices of degree exactly `m-1` prefer the clique).
pub fn find_split_partition(g: &Graph) -> Result<SplitPartition, SplitError> {
    let n = g.n();
    if n == 0 {
        return SplitPartition::new(g, Vec::new(), Vec::new());
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let degs: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();

    let mut m = 0;
    for i in 1..=n {
        if degs[i - 1] >= i - 1 {
            m = i;
        }
    }
    let head: usize = degs[..m].iter().sum();
    let tail: usize = degs[m..].iter().sum();
    if head != m * (m - 1) + tail {
        return Err(SplitError::NotSplit);
    }

    let mut in_clique = vec![false; n];
    for &v in &by_degree[..m] {
        in_clique[v] = true;
    }
    // Repair pass, by vertex id: a clique vertex that misses a clique edge
    // moves out if it has no neighbor already on the independent side.
    for v in 0..n {
        if !in_clique[v] {
            continue;
        }
        let misses_clique_edge =
            (0..n).any(|u| u != v && in_clique[u] && !g.has_edge(u, v));
        if misses_clique_edge {
            let legal = g.neighbors(v).iter().all(|&u| in_clique[u]);
            if legal {
                in_clique[v] = false;
            }
        }
    }

    let clique: Vec<usize> = (0..n).filter(|&v| in_clique[v]).collect();
    let independent: Vec<usize> = (0..n).filter(|&v| !in_clique[v]).collect();
    SplitPartition::new(g, clique, independent).map_err(|_| SplitError::RepairFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;
    use rand::Rng;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, vec![(0, 0)]).unwrap_err(),
            GraphError::SelfLoop { v: 0 }
        );
        assert_eq!(
            Graph::new(2, vec![(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge { u: 0, v: 1 }
        );
        assert_eq!(
            Graph::new(2, vec![(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { v: 2, n: 2 }
        );
    }

    #[test]
    fn handshake_invariant() {
        let g = Graph::complete(7);
        let total: usize = (0..7).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn cut_size_k2_single_edge() {
        let g = Graph::complete(2);
        assert_eq!(cut_size(&g, &[false, true]), 1);
    }

    #[test]
    fn cut_size_k4_balanced() {
        let g = Graph::complete(4);
        assert_eq!(cut_size(&g, &[false, false, true, true]), 4);
    }

    #[test]
    fn cut_size_c5_enumerated_max_is_4() {
        let g = cycle(5);
        let mut best = 0;
        for mask in 0u32..32 {
            let side: Vec<bool> = (0..5).map(|i| mask >> i & 1 == 1).collect();
            let c = cut_size(&g, &side);
            assert!(c <= 4);
            best = best.max(c);
        }
        assert_eq!(best, 4);
    }

    /// O(E^2) reference: an edge is a bridge iff deleting it increases the
    /// component count.
    fn bridges_by_deletion(g: &Graph) -> Vec<(usize, usize)> {
        let base = g.component_count();
        g.edges()
            .iter()
            .copied()
            .filter(|&e| {
                let rest = g.edges().iter().copied().filter(|&f| f != e);
                let h = Graph::new(g.n(), rest).unwrap();
                h.component_count() > base
            })
            .collect()
    }

    #[test]
    fn bridges_path_triangle_pendant() {
        assert_eq!(find_bridges(&path(3)), vec![(0, 1), (1, 2)]);
        assert_eq!(find_bridges(&Graph::complete(3)), vec![]);
        let pendant = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(find_bridges(&pendant), bridges_by_deletion(&pendant));
        assert_eq!(find_bridges(&pendant), vec![(2, 3)]);
    }

    #[test]
    fn bridges_match_deletion_oracle_on_random_graphs() {
        let mut rng = crate::rng::seeded(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=12);
            let p = rng.random::<f64>();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            assert_eq!(find_bridges(&g), bridges_by_deletion(&g), "n = {n}");
        }
    }

    #[test]
    fn two_color_k3_subsets() {
        let g = Graph::complete(3);
        let side = two_color_edge_set(&g, &[(0, 1)]).unwrap();
        assert_ne!(side[0], side[1]);
        assert!(!side[2], "untouched vertex defaults to false");
        let err = two_color_edge_set(&g, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(matches!(err, TwoColorError::OddCycle { .. }));
    }

    #[test]
    fn two_color_rejects_foreign_edges() {
        let g = path(3);
        let err = two_color_edge_set(&g, &[(0, 2)]).unwrap_err();
        assert_eq!(err, TwoColorError::MissingEdge { edge: (0, 2) });
    }

    #[test]
    fn two_color_realizes_random_cut_subsets() {
        let mut rng = crate::rng::seeded(23);
        for _ in 0..200 {
            let n = rng.random_range(2..=14);
            let p = rng.random::<f64>();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let side: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
            let subset: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| side[u] != side[v])
                .collect();
            let recolored = two_color_edge_set(&g, &subset).unwrap();
            assert!(cut_size(&g, &recolored) >= subset.len());
        }
    }

    #[test]
    fn split_partition_fig2_style_graph() {
        let (g, _) = generators::demo_split_graph();
        let part = find_split_partition(&g).unwrap();
        assert_eq!(part.clique().len(), 4);
        part.validate(&g).unwrap();
    }

    #[test]
    fn split_partition_c4_fails_k5_is_all_clique() {
        assert_eq!(find_split_partition(&cycle(4)).unwrap_err(), SplitError::NotSplit);
        let part = find_split_partition(&Graph::complete(5)).unwrap();
        assert_eq!(part.clique(), &[0, 1, 2, 3, 4]);
        assert!(part.independent().is_empty());
    }

    #[test]
    fn split_partition_never_fails_on_clique_first_random_graphs() {
        let mut rng = crate::rng::seeded(5);
        for i in 0..200 {
            let nc = rng.random_range(1..=25);
            let ni = rng.random_range(0..=25);
            let p = rng.random::<f64>();
            let (g, _) = generators::gen_random_split(nc, ni, p, 1000 + i);
            let part = find_split_partition(&g)
                .unwrap_or_else(|e| panic!("instance {i} (nc={nc}, ni={ni}): {e}"));
            part.validate(&g).unwrap();
        }
    }

    proptest! {
        #[test]
        fn cut_is_symmetric_under_complementing_sides(
            n in 1usize..12,
            edge_bits in proptest::collection::vec(any::<bool>(), 66),
            side_bits in proptest::collection::vec(any::<bool>(), 12),
        ) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edge_bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let side: Vec<bool> = side_bits[..n].to_vec();
            let flipped: Vec<bool> = side.iter().map(|&b| !b).collect();
            prop_assert_eq!(cut_size(&g, &side), cut_size(&g, &flipped));
        }
    }
}
