//! One-sided local crossing minimization for 2-layer networks.
//!
//! The fixed layer `X` is identified with positions `1..=x_count` (its order is
//! the numeric order), the free layer `Y` with ids `1..=y_count`. A solution is
//! a [`YOrder`]; its quality is the maximum number of crossings on any single
//! edge (the local crossing number).
//!
//! The crate is `no_std` (with `alloc`) unless the default `std` feature is
//! enabled; `std` only adds wall-clock budgets to the exact search.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod fenwick;

pub mod crossing;
pub mod exact;
pub mod generators;
pub mod median;
pub mod network;

pub use crossing::{
    cr_restricted, crossing_profile, edges_cross, local_crossing_number, CountMode, CrossingProfile,
};
pub use error::{Error, Result};
pub use exact::{
    brute_force_optimum, brute_force_optimum_with_cap, decide_k_planar, exact_optimum, Decision,
    ExactResult, SearchBudget,
};
pub use median::{
    bunch, classify_edges, compute_medians, heuristic_order, intrusive_edge_count, valleys_of,
    EdgeClass, EdgeClassification, MedianAssignment, MedianRule, Side, TieBreak, Valley,
    VertexClass,
};
pub use network::{Edge, TwoLayerNetwork, YOrder};
