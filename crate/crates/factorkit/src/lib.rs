//! Feasibility, certificates and constructions for fractional
//! degree-prescribed subgraphs.
//!
//! The crate decides whether a simple undirected graph admits edge weights
//! in {0, 1/2, 1} meeting per-vertex degree prescriptions (exact values or
//! [g, f] ranges), and whether it does so for *every* integer prescription
//! between g and f. Positive answers come with a half-integral indicator,
//! negative ones with a worst vertex-set certificate. On top of that sit
//! exact-arithmetic sufficient-condition predicates and generators for the
//! extremal families that show those conditions are tight.

pub mod all_factors;
pub mod conditions;
mod deficiency;
pub mod error;
pub mod extremal;
pub mod flow;
pub mod fractional;
pub mod graph;
pub mod io;
pub mod limits;

pub use all_factors::{
    box_oracle, corner_oracle, deficiency_at, has_all_fractional, has_all_fractional_ab,
    worst_set_deficiency, worst_set_verdict, AllFactorsVerdict, Engine,
};
pub use conditions::{
    kano_tokushige_hypotheses, neighborhood_union_hypotheses, niessen_all_integral,
    ConditionReport, Hypothesis, NiessenVerdict,
};
pub use error::{Error, Result};
pub use extremal::{
    gen_mindegree_sharp, gen_neighborhood_sharp, mindegree_clique_size, verify_sharpness,
    SharpnessFamily, SharpnessReport,
};
pub use flow::{FlowNetwork, FlowResult};
pub use fractional::{
    anstee_deficiency, build_symmetric_network, fractional_gf_feasible, fractional_q_feasible,
    DeficiencyCertificate, DegreeFunc, FactorOutcome, IndicatorAssignment,
};
pub use graph::{Graph, VertexSet};
pub use limits::Cutoffs;
