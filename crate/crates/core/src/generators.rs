//! Seeded instance factories: random interval models, random split graphs,
//! the dyadic segment-tree interval family, its chordal augmentation, and
//! the clique-plus-subdivision split reduction.
//!
//! Every generator is a pure function of its parameters and seed.

use crate::graph::{Graph, SplitPartition};
use crate::interval::IntervalModel;
use crate::rng::seeded;
use rand::Rng;
use serde::Serialize;

/// Declarative description of a generated instance, written alongside the
/// instance files for provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    RandomInterval { n: usize, length_scale: i64, seed: u64 },
    RandomSplit { n_clique: usize, n_indep: usize, attach_prob: f64, seed: u64 },
    SegmentTree { layers: u32 },
    ChordalCounterexample { layers: u32 },
    SplitReduction { source: String },
    DemoInterval,
    DemoSplit,
}

/// Random interval model: integer left endpoints uniform in `[0, 4n)`,
/// lengths uniform in `[1, length_scale]`.
pub fn gen_random_interval(n: usize, length_scale: i64, seed: u64) -> IntervalModel {
    assert!(n >= 1);
    assert!(length_scale >= 1);
    let mut rng = seeded(seed);
    let intervals: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let l = rng.random_range(0..4 * n as i64);
            let len = rng.random_range(1..=length_scale);
            (l, l + len)
        })
        .collect();
    IntervalModel::new(intervals).expect("generated intervals are nonempty")
}

/// Random split graph: complete graph on `0..n_clique`, independent vertices
/// `n_clique..n_clique+n_indep`, each (independent, clique) pair joined with
/// probability `attach_prob`. Returns the graph with its ground-truth
/// partition.
pub fn gen_random_split(
    n_clique: usize,
    n_indep: usize,
    attach_prob: f64,
    seed: u64,
) -> (Graph, SplitPartition) {
    assert!((0.0..=1.0).contains(&attach_prob));
    let mut rng = seeded(seed);
    let n = n_clique + n_indep;
    let mut edges = Vec::new();
    for u in 0..n_clique {
        for v in u + 1..n_clique {
            edges.push((u, v));
        }
    }
    for i in n_clique..n {
        for k in 0..n_clique {
            if rng.random::<f64>() < attach_prob {
                edges.push((k, i));
            }
        }
    }
    let g = Graph::new(n, edges).expect("construction is simple");
    let part = SplitPartition::new(
        &g,
        (0..n_clique).collect(),
        (n_clique..n).collect(),
    )
    .expect("clique-first construction is a split partition");
    (g, part)
}

/// Dyadic segment-tree interval family with `layers >= 1` layers.
///
/// Layer `i` holds `2^i` half-open intervals exactly partitioning
/// `[0, 2^(layers-1))`: interval `j` of layer `i` is
/// `[j * 2^(layers-1-i), (j+1) * 2^(layers-1-i))`. Siblings touch but do not
/// overlap, so the only edges are ancestor-descendant nestings. Vertices are
/// numbered layer-major from the root.
pub fn gen_segment_tree(layers: u32) -> IntervalModel {
    assert!(layers >= 1);
    let mut intervals = Vec::with_capacity((1usize << layers) - 1);
    for i in 0..layers {
        let width = 1i64 << (layers - 1 - i);
        for j in 0..(1i64 << i) {
            intervals.push((j * width, (j + 1) * width));
        }
    }
    IntervalModel::new(intervals).expect("dyadic intervals are nonempty")
}

/// Chordal graph with small max cut and no large triangle packing: the
/// segment-tree graph plus one pendant vertex per edge endpoint and one
/// universal vertex.
///
/// With the base graph `(V', E')`, the result has `|V'| + 1 + 2|E'|`
/// vertices and exactly `5|E'| + |V'|` edges. Vertex layout: `0..|V'|` is
/// the base, `|V'|` is the universal vertex, then pendant pairs in base-edge
/// order.
pub fn gen_chordal_counterexample(layers: u32) -> Graph {
    assert!(layers >= 2);
    let base = gen_segment_tree(layers);
    let bg = base.graph();
    let nv = bg.n();
    let ne = bg.m();
    let w = nv;
    let n = nv + 1 + 2 * ne;
    let mut edges: Vec<(usize, usize)> = bg.edges().to_vec();
    for (idx, &(u, v)) in bg.edges().iter().enumerate() {
        let x = nv + 1 + 2 * idx;
        let y = nv + 2 + 2 * idx;
        edges.push((x, u));
        edges.push((y, v));
    }
    for z in 0..n {
        if z != w {
            edges.push((w, z));
        }
    }
    Graph::new(n, edges).expect("construction is simple")
}

/// Split reduction: completes the input vertex set into a clique `K` and adds
/// one independent subdivision vertex per input edge, adjacent to that
/// edge's endpoints. The input's vertices keep their ids; subdivision
/// vertices follow in input-edge order.
pub fn split_reduction(g: &Graph) -> (Graph, SplitPartition) {
    let n = g.n();
    let total = n + g.m();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let s = n + idx;
        edges.push((u, s));
        edges.push((v, s));
    }
    let out = Graph::new(total, edges).expect("reduction output is simple");
    let part = SplitPartition::new(&out, (0..n).collect(), (n..total).collect())
        .expect("reduction output is split by construction");
    (out, part)
}

/// Fixed five-interval desk model realizing the edge set
/// `{01, 12, 13, 23, 34}` (a path with one triangle in the middle).
pub fn demo_interval_model() -> IntervalModel {
    IntervalModel::new(vec![(0, 4), (3, 10), (5, 9), (8, 13), (11, 14)])
        .expect("demo intervals are nonempty")
}

/// Fixed split graph: clique `{0, 1, 2, 3}`, independent `{4, 5, 6}`, with
/// attachments 1-4, 3-4, 1-5, 3-6. Ten edges in total.
pub fn demo_split_graph() -> (Graph, SplitPartition) {
    let edges = vec![
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (1, 4),
        (3, 4),
        (1, 5),
        (3, 6),
    ];
    let g = Graph::new(7, edges).expect("demo split graph is simple");
    let part = SplitPartition::new(&g, vec![0, 1, 2, 3], vec![4, 5, 6])
        .expect("demo split partition is valid");
    (g, part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_size, find_split_partition};
    use crate::oracle::{exact_maxcut, is_chordal, OracleBudget};

    #[test]
    fn random_interval_trivia() {
        let m = gen_random_interval(1, 5, 0);
        assert_eq!(m.graph().m(), 0);
        let a = gen_random_interval(50, 8, 7);
        let b = gen_random_interval(50, 8, 7);
        assert_eq!(a.intervals(), b.intervals(), "seeded determinism");
        assert!(is_chordal(a.graph()).0);
        assert!(a.event_points().len() <= 50);
    }

    #[test]
    fn random_interval_pinned_fixture() {
        // Regression pin: n=50, length_scale=8, seed=7.
        let m = gen_random_interval(50, 8, 7);
        assert_eq!(m.graph().m(), 53);
    }

    #[test]
    fn random_split_trivia() {
        let (g, part) = gen_random_split(6, 0, 0.5, 3);
        assert_eq!(g.m(), 15, "no independent side means a complete graph");
        assert!(part.independent().is_empty());
        for i in 0..20 {
            let (g, _) = gen_random_split(5, 7, 0.4, i);
            let found = find_split_partition(&g).unwrap();
            found.validate(&g).unwrap();
        }
    }

    #[test]
    fn segment_tree_small_layers() {
        let m = gen_segment_tree(2);
        assert_eq!(m.n(), 3);
        assert_eq!(m.graph().edges(), &[(0, 1), (0, 2)]);

        let m4 = gen_segment_tree(4);
        assert_eq!(m4.n(), 15);
        // Bottom layer: one ancestor per higher layer.
        for v in 7..15 {
            assert_eq!(m4.graph().degree(v), 3, "leaf {v}");
        }
    }

    #[test]
    fn segment_tree_edge_count_lower_bound() {
        for k in 1..=10u32 {
            let m = gen_segment_tree(k);
            let lower = (1usize << (k.saturating_sub(1))) * (k as usize - 1);
            assert!(m.graph().m() >= lower, "k = {k}");
        }
    }

    #[test]
    fn segment_tree_bottom_layer_cuts() {
        for k in 2..=10u32 {
            let m = gen_segment_tree(k);
            let g = m.graph();
            for t in 1..k {
                // Bottom t layers = vertices with id >= 2^(k-t) - 1.
                let first_bottom = (1usize << (k - t)) - 1;
                let side: Vec<bool> = (0..g.n()).map(|v| v >= first_bottom).collect();
                let expected =
                    ((1u64 << k) - (1u64 << (k - t))) as usize * (k - t) as usize;
                assert_eq!(cut_size(g, &side), expected, "k = {k}, t = {t}");
            }
        }
    }

    #[test]
    fn counterexample_counts_and_chordality() {
        for k in 2..=6u32 {
            let base = gen_segment_tree(k);
            let (nv, ne) = (base.n(), base.graph().m());
            let g = gen_chordal_counterexample(k);
            assert_eq!(g.n(), nv + 1 + 2 * ne);
            assert_eq!(g.m(), 5 * ne + nv);
            assert!(is_chordal(&g).0, "k = {k}");
        }
    }

    #[test]
    fn counterexample_maxcut_loses_the_base_edges() {
        // Edge-disjoint 5-cycles force at least one uncut edge each.
        let budget = OracleBudget { max_vertices_cut: 28, ..OracleBudget::default() };
        for k in [2, 3] {
            let base = gen_segment_tree(k);
            let g = gen_chordal_counterexample(k);
            let (mc, _) = exact_maxcut(&g, &budget).unwrap();
            assert!(mc <= g.m() - base.graph().m(), "k = {k}: mc = {mc}, m = {}", g.m());
        }
    }

    #[test]
    fn split_reduction_shape() {
        let single = Graph::new(2, vec![(0, 1)]).unwrap();
        let (tri, part) = split_reduction(&single);
        assert_eq!(tri.n(), 3);
        assert_eq!(tri.m(), 3, "single edge reduces to a triangle");
        part.validate(&tri).unwrap();

        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        let (out, part) = split_reduction(&g);
        assert_eq!(out.m(), 5 * 4 / 2 + 2 * g.m());
        part.validate(&out).unwrap();
        let found = find_split_partition(&out).unwrap();
        found.validate(&out).unwrap();
    }
}
