//! JSON payloads printed by the subcommands. Field order is fixed by the
//! struct definitions, and every float is emitted by serde_json's exact
//! shortest-round-trip formatter, so identical runs print identical bytes.

use cutpack::decompose::{Branch, DecompositionOutcome};
use cutpack::graph::Cut;
use serde::Serialize;

#[derive(Serialize)]
pub struct CutJson {
    pub size: usize,
    pub side: String,
    pub provenance: String,
    pub trials: usize,
    pub seed: u64,
    pub eta: Option<f64>,
    pub sdp_objective: Option<f64>,
    pub ratio_vs_sdp: Option<f64>,
}

impl CutJson {
    pub fn new(
        cut: &Cut,
        trials: usize,
        seed: u64,
        eta: Option<f64>,
        sdp_objective: Option<f64>,
    ) -> Self {
        let ratio_vs_sdp = sdp_objective.map(|obj| cut.size() as f64 / obj);
        CutJson {
            size: cut.size(),
            side: cut.side_bitstring(),
            provenance: cut.provenance().to_string(),
            trials,
            seed,
            eta,
            sdp_objective,
            ratio_vs_sdp,
        }
    }
}

#[derive(Serialize)]
pub struct OutcomeJson {
    pub branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<[usize; 3]>>,
    pub bridges: Vec<(usize, usize)>,
    pub packed_edge_count: usize,
    pub iterations: usize,
}

impl OutcomeJson {
    pub fn new(out: &DecompositionOutcome) -> Self {
        OutcomeJson {
            branch: out.branch.to_string(),
            cut_side: out.cut.as_ref().map(|c| c.side_bitstring()),
            cut_size: out.cut.as_ref().map(|c| c.size()),
            triangles: match out.branch {
                Branch::Packed => out.packing.as_ref().map(|p| p.triangles().to_vec()),
                Branch::BigCut => None,
            },
            bridges: out.bridges.clone(),
            packed_edge_count: out.packed_edges.len(),
            iterations: out.iterations,
        }
    }
}

#[derive(Serialize)]
pub struct ConstantsJson {
    pub alpha_gw: f64,
    pub theta_c_radians: f64,
    pub theta_c_degrees: f64,
}
