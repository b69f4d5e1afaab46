//! Interval representations, bags, the per-vertex minimum-bag statistic and
//! the small/large vertex classification.
//!
//! Intervals are half-open `[l, r)` with integer endpoints. Half-open
//! semantics make touching intervals non-adjacent, which the dyadic
//! segment-tree construction in [`crate::generators`] relies on, and keep
//! every bag query exact integer arithmetic.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval {v} is empty or reversed: [{l}, {r})")]
    EmptyInterval { v: usize, l: i64, r: i64 },
}

/// Per-vertex half-open intervals together with the graph they realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    intervals: Vec<(i64, i64)>,
    graph: Graph,
}

/// The set of vertices whose intervals contain the point `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bag {
    pub t: i64,
    pub members: Vec<usize>,
}

/// Small/large split of the vertex set at threshold `t_threshold`:
/// `v` is small iff `d_v <= T * minbag_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub small: Vec<usize>,
    pub large: Vec<usize>,
    pub minbag: Vec<usize>,
    pub t_threshold: f64,
}

impl Classification {
    pub fn is_small(&self, v: usize) -> bool {
        self.small.binary_search(&v).is_ok()
    }
}

impl IntervalModel {
    /// Builds a model from integer half-open intervals; vertex `v` gets
    /// `intervals[v]`. Adjacency is `l_u < r_v && l_v < r_u`.
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self, IntervalError> {
        for (v, &(l, r)) in intervals.iter().enumerate() {
            if l >= r {
                return Err(IntervalError::EmptyInterval { v, l, r });
            }
        }
        let n = intervals.len();
        let mut edges = Vec::new();
        for u in 0..n {
            let (lu, ru) = intervals[u];
            for v in u + 1..n {
                let (lv, rv) = intervals[v];
                if lu < rv && lv < ru {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::new(n, edges).expect("derived edges are simple by construction");
        Ok(IntervalModel { intervals, graph })
    }

    /// Builds a model from real-valued half-open intervals by rank
    /// normalization: all endpoints are sorted and replaced by their rank,
    /// which preserves the intersection pattern exactly.
    pub fn from_real_intervals(intervals: &[(f64, f64)]) -> Result<Self, IntervalError> {
        let mut endpoints: Vec<f64> = intervals.iter().flat_map(|&(l, r)| [l, r]).collect();
        endpoints.sort_by(f64::total_cmp);
        endpoints.dedup();
        let rank = |x: f64| -> i64 {
            endpoints.partition_point(|&e| e < x) as i64
        };
        let ranked: Vec<(i64, i64)> =
            intervals.iter().map(|&(l, r)| (rank(l), rank(r))).collect();
        IntervalModel::new(ranked)
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    pub fn interval(&self, v: usize) -> (i64, i64) {
        self.intervals[v]
    }

    /// Sorted distinct left endpoints of all intervals. Every bag that
    /// matters to the packing loop is anchored at one of these points.
    pub fn event_points(&self) -> Vec<i64> {
        let mut points: Vec<i64> = self.intervals.iter().map(|&(l, _)| l).collect();
        points.sort_unstable();
        points.dedup();
        points
    }

    /// Bag at `t` under the half-open membership rule `l <= t < r`.
    pub fn bag_at(&self, t: i64) -> Bag {
        let members = self
            .intervals
            .iter()
            .enumerate()
            .filter(|&(_, &(l, r))| l <= t && t < r)
            .map(|(v, _)| v)
            .collect();
        Bag { t, members }
    }

    /// Minimum bag size over the event points inside `v`'s interval. The
    /// vertex's own left endpoint is always an event point, so the minimum
    /// is over a nonempty set and is at least 1.
    pub fn min_bag(&self, v: usize) -> usize {
        let (l, r) = self.intervals[v];
        self.event_points()
            .into_iter()
            .filter(|&t| l <= t && t < r)
            .map(|t| self.bag_at(t).members.len())
            .min()
            .expect("l_v itself is an event point inside [l_v, r_v)")
    }

    /// Classifies every vertex as small (`d_v <= T * minbag_v`) or large.
    pub fn classify(&self, t_threshold: f64) -> Classification {
        assert!(t_threshold > 0.0, "threshold must be positive");
        let n = self.n();
        let minbag: Vec<usize> = (0..n).map(|v| self.min_bag(v)).collect();
        let mut small = Vec::new();
        let mut large = Vec::new();
        for v in 0..n {
            let d = self.graph.degree(v) as f64;
            if d <= t_threshold * minbag[v] as f64 {
                small.push(v);
            } else {
                large.push(v);
            }
        }
        Classification { small, large, minbag, t_threshold }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::Rng;

    #[test]
    fn reversed_interval_rejected() {
        assert_eq!(
            IntervalModel::new(vec![(3, 3)]).unwrap_err(),
            IntervalError::EmptyInterval { v: 0, l: 3, r: 3 }
        );
    }

    #[test]
    fn touching_intervals_are_not_adjacent() {
        let m = IntervalModel::new(vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(m.graph().m(), 0);
    }

    #[test]
    fn demo_model_realizes_expected_edges() {
        let m = generators::demo_interval_model();
        let expected = vec![(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)];
        assert_eq!(m.graph().edges(), expected.as_slice());
        assert_eq!(m.event_points().len(), 5);
    }

    #[test]
    fn rank_normalization_preserves_the_pattern() {
        // Same overlap pattern as the demo model, drawn with real endpoints.
        let m = IntervalModel::from_real_intervals(&[
            (0.0, 2.0),
            (1.5, 5.0),
            (2.5, 4.5),
            (4.0, 6.5),
            (5.5, 6.8),
        ])
        .unwrap();
        assert_eq!(m.graph(), generators::demo_interval_model().graph());
    }

    #[test]
    fn bag_membership_examples() {
        let m = generators::demo_interval_model();
        // b, c, d pairwise overlap around position 8.
        assert_eq!(m.bag_at(8).members, vec![1, 2, 3]);
        assert!(m.bag_at(-5).members.is_empty());
    }

    #[test]
    fn event_points_basic() {
        let m = IntervalModel::new(vec![(0, 2), (1, 3)]).unwrap();
        assert_eq!(m.event_points(), vec![0, 1]);
    }

    #[test]
    fn min_bag_basics() {
        let lone = IntervalModel::new(vec![(0, 5)]).unwrap();
        assert_eq!(lone.min_bag(0), 1);
        let twins = IntervalModel::new(vec![(2, 7), (2, 7)]).unwrap();
        assert_eq!(twins.min_bag(0), 2);
        assert_eq!(twins.min_bag(1), 2);
    }

    #[test]
    fn bags_are_cliques_and_minbag_bounds_degree_on_random_models() {
        for seed in 0..30 {
            let m = generators::gen_random_interval(40, 9, seed);
            for &t in &m.event_points() {
                let bag = m.bag_at(t);
                for (i, &u) in bag.members.iter().enumerate() {
                    for &v in &bag.members[i + 1..] {
                        assert!(m.graph().has_edge(u, v), "bag at {t} not a clique");
                    }
                }
            }
            for v in 0..m.n() {
                assert!(m.graph().degree(v) + 1 >= m.min_bag(v));
                assert!(m.min_bag(v) >= 1);
            }
        }
    }

    #[test]
    fn derived_graph_round_trip_is_idempotent() {
        let m = generators::gen_random_interval(60, 12, 99);
        let rebuilt = IntervalModel::new(m.intervals().to_vec()).unwrap();
        assert_eq!(rebuilt.graph(), m.graph());
    }

    #[test]
    fn star_with_disjoint_leaves_is_all_small() {
        // Center spans everything; ten leaves sit at disjoint positions.
        let mut intervals = vec![(0i64, 40i64)];
        for i in 0..10 {
            intervals.push((4 * i, 4 * i + 1));
        }
        let m = IntervalModel::new(intervals).unwrap();
        assert_eq!(m.graph().m(), 10);
        let c = m.classify(200.0);
        assert!(c.large.is_empty());
        assert_eq!(c.small.len(), 11);
    }

    #[test]
    fn threshold_at_max_degree_leaves_no_large_vertices() {
        let m = generators::gen_random_interval(50, 10, 3);
        let max_deg = (0..m.n()).map(|v| m.graph().degree(v)).max().unwrap();
        let c = m.classify(max_deg.max(1) as f64);
        assert!(c.large.is_empty());
    }

    /// Large-large edges stay below 8|E|/T on every generated model.
    #[test]
    fn few_large_edges_bound_holds_on_random_models() {
        let mut rng = crate::rng::seeded(7);
        for i in 0..60 {
            let n = rng.random_range(2..=120);
            let scale = rng.random_range(2..=30);
            let m = generators::gen_random_interval(n, scale, 4000 + i);
            let c = m.classify(200.0);
            let g = m.graph();
            let ll = g
                .edges()
                .iter()
                .filter(|&&(u, v)| !c.is_small(u) && !c.is_small(v))
                .count();
            assert!(
                ll as f64 <= 8.0 / 200.0 * g.m() as f64,
                "instance {i}: {ll} large-large edges of {}",
                g.m()
            );
        }
    }

    /// When every bag holds at most max{1, eps|B_t|} small vertices, the
    /// number of small-small edges is at most 4 eps |E|.
    #[test]
    fn few_small_edges_bound_holds_when_hypothesis_does() {
        let eps = 0.01;
        let check = |m: &IntervalModel| -> bool {
            let c = m.classify(200.0);
            let hypothesis = m.event_points().iter().all(|&t| {
                let bag = m.bag_at(t);
                let small_in_bag =
                    bag.members.iter().filter(|&&v| c.is_small(v)).count() as f64;
                small_in_bag <= (eps * bag.members.len() as f64).max(1.0)
            });
            if !hypothesis {
                return false;
            }
            let ss = m
                .graph()
                .edges()
                .iter()
                .filter(|&&(u, v)| c.is_small(u) && c.is_small(v))
                .count();
            assert!(ss as f64 <= 4.0 * eps * m.graph().m() as f64);
            true
        };

        // A hub overlapping 450 short disjoint intervals: the hub is large
        // (degree 450 > 200 * 2), every leaf is small, and no bag has two
        // small members, so the hypothesis holds non-trivially.
        let mut intervals = vec![(0i64, 4 * 450i64)];
        for i in 0..450 {
            intervals.push((4 * i, 4 * i + 1));
        }
        let hub = IntervalModel::new(intervals).unwrap();
        assert!(check(&hub), "hub family must satisfy the hypothesis");

        // Random models: assert the implication wherever the hypothesis holds.
        for seed in 0..40 {
            let m = generators::gen_random_interval(30, 6, 7000 + seed);
            check(&m);
        }
    }
}
