//! Edge-disjoint triangle packings.
//!
//! The clique packing labels each triple `{u, v, w}` of a clique on
//! `0..k` with `(u + v + w) mod k` and keeps the most populous label.
//! Within one label an edge `uv` pins the third vertex to
//! `(label - u - v) mod k`, so the kept class is edge-disjoint and the
//! pigeonhole principle makes it at least `C(k,3) / k >= k(k-1)/20` triples.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackError {
    #[error("clique packing needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("bag packing needs at least 2 vertices, got {0}")]
    BagTooSmall(usize),
    #[error("vertices are not a clique in the host graph: missing edge ({0}, {1})", edge.0, edge.1)]
    NotAClique { edge: (usize, usize) },
}

/// A set of vertex triples whose edges exist in the host graph and are
/// pairwise disjoint. Construction sites are trusted; [`verify_packing`]
/// re-checks both invariants from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrianglePacking {
    triangles: Vec<[usize; 3]>,
}

impl TrianglePacking {
    pub fn empty() -> Self {
        TrianglePacking { triangles: Vec::new() }
    }

    /// Normalizes each triple to ascending vertex order.
    pub fn from_triples(triples: impl IntoIterator<Item = [usize; 3]>) -> Self {
        let triangles = triples
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        TrianglePacking { triangles }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn extend(&mut self, other: TrianglePacking) {
        self.triangles.extend(other.triangles);
    }
}

/// First violation found when re-checking a packing against its host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingViolation {
    /// Triple `index` uses a pair that is not an edge of the host.
    MissingHostEdge { index: usize, edge: (usize, usize) },
    /// The same edge appears in two triples.
    ReusedEdge { edge: (usize, usize), first: usize, second: usize },
    /// A triple has repeated vertices.
    DegenerateTriple { index: usize },
}

impl std::fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PackingViolation::MissingHostEdge { index, edge } => write!(
                f,
                "triangle #{index} uses ({}, {}) which is not a host edge",
                edge.0, edge.1
            ),
            PackingViolation::ReusedEdge { edge, first, second } => write!(
                f,
                "edge ({}, {}) is reused by triangles #{first} and #{second}",
                edge.0, edge.1
            ),
            PackingViolation::DegenerateTriple { index } => {
                write!(f, "triangle #{index} repeats a vertex")
            }
        }
    }
}

/// Re-checks from scratch that every triple's edges exist in `host` and that
/// no edge is used twice. Returns the first violation in triple order.
pub fn verify_packing(p: &TrianglePacking, host: &Graph) -> Result<(), PackingViolation> {
    use std::collections::HashMap;
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in p.triangles().iter().enumerate() {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(PackingViolation::DegenerateTriple { index: i });
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let e = (a.min(b), a.max(b));
            if !host.has_edge(e.0, e.1) {
                return Err(PackingViolation::MissingHostEdge { index: i, edge: e });
            }
            if let Some(&first) = used.get(&e) {
                return Err(PackingViolation::ReusedEdge { edge: e, first, second: i });
            }
            used.insert(e, i);
        }
    }
    Ok(())
}

/// Packs edge-disjoint triangles into a clique of the host graph.
///
/// Returns all triples of the most populous modular label (smallest label on
/// ties), which has size at least `C(k,3)/k >= k(k-1)/20`.
pub fn pack_clique(vertices: &[usize], host: &Graph) -> Result<TrianglePacking, PackError> {
    let k = vertices.len();
    if k < 3 {
        return Err(PackError::TooFewVertices(k));
    }
    let mut ids = vertices.to_vec();
    ids.sort_unstable();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if !host.has_edge(u, v) {
                return Err(PackError::NotAClique { edge: (u, v) });
            }
        }
    }

    // Pass 1: count triples per label over positions u < v < w.
    let mut counts = vec![0usize; k];
    for u in 0..k {
        for v in u + 1..k {
            for w in v + 1..k {
                counts[(u + v + w) % k] += 1;
            }
        }
    }
    let best_label = (0..k).max_by_key(|&l| (counts[l], usize::MAX - l)).unwrap();

    // Pass 2: collect only the winning label.
    let mut triples = Vec::with_capacity(counts[best_label]);
    for u in 0..k {
        for v in u + 1..k {
            for w in v + 1..k {
                if (u + v + w) % k == best_label {
                    triples.push([ids[u], ids[v], ids[w]]);
                }
            }
        }
    }
    debug_assert!(triples.len() * 20 >= k * (k - 1));
    Ok(TrianglePacking::from_triples(triples))
}

/// Result of packing into one clique bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BagPacking {
    Packed(TrianglePacking),
    /// A two-vertex bag whose endpoints have no common neighbor: the bag
    /// edge is a bridge and should be handled as one.
    BridgeFlag { edge: (usize, usize) },
}

/// Packs a clique bag: three or more vertices delegate to [`pack_clique`];
/// exactly two vertices pack a single triangle through a common neighbor,
/// or raise [`BagPacking::BridgeFlag`] when no common neighbor exists.
pub fn pack_bag(bag: &[usize], host: &Graph) -> Result<BagPacking, PackError> {
    match bag.len() {
        0 | 1 => Err(PackError::BagTooSmall(bag.len())),
        2 => {
            let (v1, v2) = (bag[0].min(bag[1]), bag[0].max(bag[1]));
            if !host.has_edge(v1, v2) {
                return Err(PackError::NotAClique { edge: (v1, v2) });
            }
            match common_neighbor(host, v1, v2) {
                Some(u) => Ok(BagPacking::Packed(TrianglePacking::from_triples([[
                    v1, v2, u,
                ]]))),
                None => Ok(BagPacking::BridgeFlag { edge: (v1, v2) }),
            }
        }
        _ => pack_clique(bag, host).map(BagPacking::Packed),
    }
}

/// Smallest-id common neighbor of `u` and `v`, if any.
pub fn common_neighbor(g: &Graph, u: usize, v: usize) -> Option<usize> {
    let (mut a, mut b) = (g.neighbors(u).iter().peekable(), g.neighbors(v).iter().peekable());
    while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => {
                a.next();
            }
            std::cmp::Ordering::Greater => {
                b.next();
            }
            std::cmp::Ordering::Equal => return Some(x),
        }
    }
    None
}
