//! Max-Cut toolkit for interval and split graphs.
//!
//! The library combines two attacks on Maximum Cut for these graph classes:
//!
//! * structural decompositions that either certify a cut on at least 90% of
//!   the edges or produce a large edge-disjoint triangle packing, and
//! * a low-rank SDP relaxation with plain and perturbed hyperplane rounding,
//!   where the perturbation width is derived from the packing density.
//!
//! Brute-force oracles ([`oracle`]) and seeded instance factories
//! ([`generators`]) back every numerical claim at desk scale.

pub mod decompose;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod rng;
pub mod rounding;
pub mod sdp;

pub use graph::{Cut, Graph, Provenance, SplitPartition};
pub use interval::IntervalModel;
pub use packing::TrianglePacking;
