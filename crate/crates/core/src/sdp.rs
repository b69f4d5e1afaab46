//! Low-rank solver for the Max-Cut semidefinite relaxation
//! `maximize 1/2 * sum_{uv in E} (1 - x_u . x_v)` over unit vectors, plus
//! per-edge angle profiles and the rounding constant `alpha ~ 0.878`.
//!
//! The solver is block-coordinate ascent on the factorized problem: each
//! update sets `x_v <- -normalize(sum of neighbor vectors)`, the exact
//! per-vertex maximizer, so the objective never decreases. With rank above
//! `sqrt(2n)` the landscape has no spurious local maxima in practice, and
//! the method needs nothing beyond a seeded RNG.

use crate::graph::Graph;
use crate::rng::{seeded, NormalSource};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SdpError {
    #[error("cannot solve the relaxation of an empty graph")]
    EmptyGraph,
}

/// Default factorization rank `ceil(sqrt(2n)) + 1`.
pub fn default_rank(n: usize) -> usize {
    (2.0 * n as f64).sqrt().ceil() as usize + 1
}

/// Per-vertex unit vectors approximating the relaxation optimum.
#[derive(Debug, Clone)]
pub struct VectorSolution {
    rank: usize,
    vectors: Vec<Vec<f64>>,
    objective: f64,
}

impl VectorSolution {
    pub fn new(g: &Graph, rank: usize, vectors: Vec<Vec<f64>>) -> Self {
        assert_eq!(vectors.len(), g.n());
        assert!(vectors.iter().all(|x| x.len() == rank));
        let objective = objective(g, &vectors);
        VectorSolution { rank, vectors, objective }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, v: usize) -> &[f64] {
        &self.vectors[v]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Angle `arccos(x_u . x_v)` of an edge, with the dot product clamped to
    /// `[-1, 1]` so floating-point drift cannot produce NaN.
    pub fn edge_angle(&self, u: usize, v: usize) -> f64 {
        dot(&self.vectors[u], &self.vectors[v]).clamp(-1.0, 1.0).acos()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Relaxation objective `1/2 * sum_{uv in E} (1 - x_u . x_v)`.
pub fn objective(g: &Graph, vectors: &[Vec<f64>]) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v)| 0.5 * (1.0 - dot(&vectors[u], &vectors[v])))
        .sum()
}

#[derive(Debug, Clone, Copy)]
pub struct SdpParams {
    /// Factorization rank; defaults to `ceil(sqrt(2n)) + 1`.
    pub rank: Option<usize>,
    /// Sweep-improvement stopping tolerance; defaults to `1e-8 * |E|`.
    pub tol: Option<f64>,
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for SdpParams {
    fn default() -> Self {
        SdpParams { rank: None, tol: None, max_sweeps: 5000, seed: 0 }
    }
}

impl SdpParams {
    pub fn with_seed(seed: u64) -> Self {
        SdpParams { seed, ..SdpParams::default() }
    }
}

/// Convergence report. Nonconvergence is not fatal; callers see the sweep
/// count and the last sweep's improvement.
#[derive(Debug, Clone, Copy)]
pub struct SolveInfo {
    pub sweeps: usize,
    pub converged: bool,
    pub last_improvement: f64,
}

/// Solves the relaxation by coordinate ascent from a seeded random start.
///
/// Vertices update in id order; an update with a (near-)zero neighbor sum
/// keeps its previous vector, which covers isolated vertices too.
pub fn solve_sdp(g: &Graph, params: &SdpParams) -> Result<(VectorSolution, SolveInfo), SdpError> {
    let n = g.n();
    if n == 0 {
        return Err(SdpError::EmptyGraph);
    }
    let rank = params.rank.unwrap_or_else(|| default_rank(n));
    assert!(rank >= 1);
    let tol = params.tol.unwrap_or(1e-8 * g.m() as f64);

    let mut src = NormalSource::new(seeded(params.seed));
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n {
        vectors.push(random_unit(&mut src, rank));
    }

    if g.m() == 0 {
        let sol = VectorSolution::new(g, rank, vectors);
        return Ok((sol, SolveInfo { sweeps: 0, converged: true, last_improvement: 0.0 }));
    }

    let mut prev = objective(g, &vectors);
    let mut sweeps = 0;
    let mut converged = false;
    let mut last_improvement = f64::INFINITY;
    let mut sum = vec![0.0; rank];
    while sweeps < params.max_sweeps {
        for v in 0..n {
            sum.fill(0.0);
            for &u in g.neighbors(v) {
                for (s, x) in sum.iter_mut().zip(&vectors[u]) {
                    *s += x;
                }
            }
            let norm = dot(&sum, &sum).sqrt();
            if norm > 1e-300 {
                for (x, s) in vectors[v].iter_mut().zip(&sum) {
                    *x = -s / norm;
                }
            }
        }
        sweeps += 1;
        let now = objective(g, &vectors);
        last_improvement = now - prev;
        prev = now;
        if last_improvement < tol {
            converged = true;
            break;
        }
    }

    let sol = VectorSolution::new(g, rank, vectors);
    Ok((sol, SolveInfo { sweeps, converged, last_improvement }))
}

/// Edge-angle profile of a solution at perturbation width `eta`:
/// `E_z` holds near-zero angles (`theta <= pi/8 * eta`), `E_pi` near-flat
/// ones (`|theta - pi| <= sqrt(eta)`), and `E_prime` the angles at most
/// `2pi/3` outside `E_z`. Sets are stored as edge indices into
/// `g.edges()`.
#[derive(Debug, Clone)]
pub struct AngleProfile {
    pub eta: f64,
    pub theta: Vec<f64>,
    pub e_z: Vec<usize>,
    pub e_pi: Vec<usize>,
    pub e_prime: Vec<usize>,
}

impl AngleProfile {
    /// Histogram of the angles over `bins` equal slices of `[0, pi]`.
    pub fn histogram(&self, bins: usize) -> Vec<usize> {
        let mut h = vec![0usize; bins];
        for &t in &self.theta {
            let idx = ((t / std::f64::consts::PI) * bins as f64) as usize;
            h[idx.min(bins - 1)] += 1;
        }
        h
    }
}

pub fn angle_profile(g: &Graph, sol: &VectorSolution, eta: f64) -> AngleProfile {
    assert!(eta > 0.0 && eta <= 0.01, "eta must lie in (0, 0.01]");
    let pi = std::f64::consts::PI;
    let dots: Vec<f64> = g
        .edges()
        .iter()
        .map(|&(u, v)| dot(sol.vector(u), sol.vector(v)).clamp(-1.0, 1.0))
        .collect();
    let theta: Vec<f64> = dots.iter().map(|&d| d.acos()).collect();
    let mut e_z = Vec::new();
    let mut e_pi = Vec::new();
    let mut e_prime = Vec::new();
    for (i, &t) in theta.iter().enumerate() {
        let in_z = t <= pi / 8.0 * eta;
        if in_z {
            e_z.push(i);
        }
        if (t - pi).abs() <= eta.sqrt() {
            e_pi.push(i);
        }
        // theta <= 2pi/3 tested in dot space, where the boundary -1/2 is
        // exact, so the equality case lands inside E'.
        if dots[i] >= -0.5 && !in_z {
            e_prime.push(i);
        }
    }
    AngleProfile { eta, theta, e_z, e_pi, e_prime }
}

/// The hyperplane-rounding ratio `(2/pi) * theta / (1 - cos theta)`.
pub fn rounding_ratio(theta: f64) -> f64 {
    2.0 / std::f64::consts::PI * theta / (1.0 - theta.cos())
}

/// `(alpha, theta_c)`: the minimum of the rounding ratio over `(0, pi]` and
/// its argmin, by bisection on the derivative sign to 1e-13.
pub fn alpha_gw_constants() -> (f64, f64) {
    // d/dtheta [theta / (1 - cos theta)] vanishes iff
    // (1 - cos theta) - theta sin theta = 0.
    let h = |t: f64| (1.0 - t.cos()) - t * t.sin();
    let (mut lo, mut hi) = (1.0f64, 3.0f64);
    debug_assert!(h(lo) < 0.0 && h(hi) > 0.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta_c = 0.5 * (lo + hi);
    (rounding_ratio(theta_c), theta_c)
}

/// Independent check of [`alpha_gw_constants`] that never touches the
/// analytic derivative: bisection on the sign of the central finite
/// difference `f(theta + h) - f(theta - h)` with `h = 1e-5`, whose root
/// bias and rounding noise both sit far below 1e-9.
pub fn alpha_gw_by_slope_bisection() -> (f64, f64) {
    let h = 1e-5;
    let slope = |t: f64| rounding_ratio(t + h) - rounding_ratio(t - h);
    let (mut lo, mut hi) = (1.0f64, 3.0f64);
    debug_assert!(slope(lo) < 0.0 && slope(hi) > 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta_c = 0.5 * (lo + hi);
    (rounding_ratio(theta_c), theta_c)
}

/// Golden-section search on the ratio over `[1, pi]`. Value comparisons on
/// a quadratically flat minimum cannot place the argmin better than about
/// `sqrt(f64 epsilon)`, so this pins `alpha` to full precision but `theta`
/// only to ~1e-7; it serves as a third, coarser cross-check.
pub fn alpha_gw_by_golden_section() -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1.0f64, std::f64::consts::PI);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (rounding_ratio(c), rounding_ratio(d));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = rounding_ratio(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = rounding_ratio(d);
        }
    }
    let theta = 0.5 * (a + b);
    (rounding_ratio(theta), theta)
}

fn random_unit(src: &mut NormalSource<rand_chacha::ChaCha8Rng>, rank: usize) -> Vec<f64> {
    loop {
        let mut x = vec![0.0; rank];
        src.fill_normal(&mut x);
        let norm = dot(&x, &x).sqrt();
        if norm > 1e-12 {
            for xi in &mut x {
                *xi /= norm;
            }
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_maxcut, OracleBudget};
    use rand::Rng;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn unit_norms_ok(sol: &VectorSolution) -> bool {
        sol.vectors()
            .iter()
            .all(|x| (dot(x, x).sqrt() - 1.0).abs() <= 1e-9)
    }

    #[test]
    fn k2_reaches_antipodal_vectors() {
        let g = Graph::complete(2);
        let (sol, info) = solve_sdp(&g, &SdpParams::with_seed(1)).unwrap();
        assert!(info.converged);
        assert!((sol.objective() - 1.0).abs() < 1e-9, "objective {}", sol.objective());
        assert!((sol.edge_angle(0, 1) - std::f64::consts::PI).abs() < 1e-4);
    }

    #[test]
    fn triangle_reaches_120_degrees() {
        let g = Graph::complete(3);
        let (sol, _) = solve_sdp(&g, &SdpParams::with_seed(2)).unwrap();
        assert!((sol.objective() - 2.25).abs() < 1e-7, "objective {}", sol.objective());
        for &(u, v) in g.edges() {
            assert!((sol.edge_angle(u, v) - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-3);
        }
    }

    #[test]
    fn c5_matches_the_circulant_value() {
        // (5/2) * (1 - cos(4 pi / 5)), the known optimum for the 5-cycle.
        let expected = 2.5 * (1.0 - (4.0 * std::f64::consts::PI / 5.0).cos());
        let g = cycle(5);
        let params = SdpParams { tol: Some(1e-13), ..SdpParams::with_seed(3) };
        let (sol, _) = solve_sdp(&g, &params).unwrap();
        assert!(
            (sol.objective() - expected).abs() < 1e-6,
            "objective {} vs {expected}",
            sol.objective()
        );
        assert!(unit_norms_ok(&sol));
    }

    #[test]
    fn objective_is_monotone_across_sweeps() {
        // Re-run the sweep loop manually and watch the objective.
        let g = cycle(9);
        let mut src = NormalSource::new(seeded(5));
        let mut vectors: Vec<Vec<f64>> = (0..9).map(|_| random_unit(&mut src, 4)).collect();
        let mut prev = objective(&g, &vectors);
        for _ in 0..50 {
            for v in 0..9 {
                let mut sum = vec![0.0; 4];
                for &u in g.neighbors(v) {
                    for (s, x) in sum.iter_mut().zip(&vectors[u]) {
                        *s += x;
                    }
                }
                let norm = dot(&sum, &sum).sqrt();
                if norm > 1e-300 {
                    for (x, s) in vectors[v].iter_mut().zip(&sum) {
                        *x = -s / norm;
                    }
                }
                let now = objective(&g, &vectors);
                assert!(now >= prev - 1e-12, "update decreased the objective");
                prev = now;
            }
        }
    }

    #[test]
    fn sandwich_between_maxcut_and_dense_restarts() {
        let mut rng = crate::rng::seeded(17);
        let budget = OracleBudget::default();
        for trial in 0..12 {
            let n = rng.random_range(3..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < 0.6 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            if g.m() == 0 {
                continue;
            }
            let (sol, _) = solve_sdp(
                &g,
                &SdpParams { tol: Some(1e-12), ..SdpParams::with_seed(trial) },
            )
            .unwrap();
            let (mc, _) = exact_maxcut(&g, &budget).unwrap();
            assert!(sol.objective() + 1e-6 >= mc as f64, "trial {trial}");
            let mut dense_best = f64::NEG_INFINITY;
            for restart in 0..20 {
                let params = SdpParams {
                    rank: Some(n),
                    tol: Some(1e-12),
                    max_sweeps: 5000,
                    seed: 1000 + restart,
                };
                let (dense, _) = solve_sdp(&g, &params).unwrap();
                dense_best = dense_best.max(dense.objective());
            }
            assert!(
                sol.objective() <= dense_best + 1e-6,
                "trial {trial}: {} vs {dense_best}",
                sol.objective()
            );
        }
    }

    #[test]
    fn rotation_invariance_of_objective_and_angles() {
        let g = cycle(7);
        let (sol, _) = solve_sdp(&g, &SdpParams::with_seed(9)).unwrap();
        let mut src = NormalSource::new(seeded(33));
        let mut rotated: Vec<Vec<f64>> = sol.vectors().to_vec();
        for _ in 0..3 {
            let w = random_unit(&mut src, sol.rank());
            for x in &mut rotated {
                let c = 2.0 * dot(x, &w);
                for (xi, wi) in x.iter_mut().zip(&w) {
                    *xi -= c * wi;
                }
            }
        }
        let rotated_sol = VectorSolution::new(&g, sol.rank(), rotated);
        assert!((rotated_sol.objective() - sol.objective()).abs() < 1e-9);
        for &(u, v) in g.edges() {
            assert!((rotated_sol.edge_angle(u, v) - sol.edge_angle(u, v)).abs() < 1e-9);
        }
    }

    #[test]
    fn profile_classifies_the_limit_cases() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let vectors = vec![
            vec![1.0, 0.0],
            vec![1.0, 0.0],  // identical to 0: theta = 0
            vec![-1.0, 0.0], // antipodal to 1: theta = pi
        ];
        let sol = VectorSolution::new(&g, 2, vectors);
        let profile = angle_profile(&g, &sol, 0.01);
        assert_eq!(profile.e_z, vec![0], "identical vectors land in E_z");
        assert_eq!(profile.e_pi, vec![1], "antipodal vectors land in E_pi");
        assert!(profile.e_prime.is_empty());
    }

    #[test]
    fn profile_of_the_triangle_optimum_is_all_e_prime() {
        // The symmetric 120-degree configuration, written with dyadic
        // coordinates so every pairwise dot product is exactly -1/2.
        let g = Graph::complete(3);
        let vectors = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![-0.5, 0.5, 0.5, 0.5],
            vec![-0.5, -0.5, -0.5, -0.5],
        ];
        let sol = VectorSolution::new(&g, 4, vectors);
        assert_eq!(sol.objective(), 2.25, "three edges at 120 degrees");
        let profile = angle_profile(&g, &sol, 1e-4);
        assert_eq!(profile.e_prime.len(), 3, "all three angles sit at 2pi/3");
        assert!(profile.e_z.is_empty());
        assert!(profile.e_pi.is_empty());

        // The solver lands on the same configuration up to rotation.
        let (solved, _) = solve_sdp(&g, &SdpParams::with_seed(4)).unwrap();
        for &(u, v) in g.edges() {
            assert!((solved.edge_angle(u, v) - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-3);
        }
    }

    #[test]
    fn constants_agree_and_round_as_printed() {
        let (a1, t1) = alpha_gw_constants();
        let (a2, t2) = alpha_gw_by_slope_bisection();
        let (a3, t3) = alpha_gw_by_golden_section();
        assert!((a1 - a2).abs() < 1e-9);
        assert!((t1 - t2).abs() < 1e-9);
        assert!((a1 - a3).abs() < 1e-9);
        assert!((t1 - t3).abs() < 1e-6, "golden section is value-limited");
        assert!(a1 >= 0.878 && a1 < 0.879, "alpha = {a1}");
        let degrees = t1.to_degrees();
        assert_eq!(degrees.round() as i64, 134, "theta_c = {degrees} degrees");
        assert!((t1 - 2.33112).abs() < 1e-4);
    }

    #[test]
    fn empty_graph_is_rejected_and_edgeless_converges() {
        let g = Graph::new(0, Vec::new()).unwrap();
        assert_eq!(solve_sdp(&g, &SdpParams::default()).unwrap_err(), SdpError::EmptyGraph);
        let lone = Graph::new(3, Vec::new()).unwrap();
        let (sol, info) = solve_sdp(&lone, &SdpParams::default()).unwrap();
        assert!(info.converged);
        assert_eq!(sol.objective(), 0.0);
        assert!(unit_norms_ok(&sol));
    }
}
