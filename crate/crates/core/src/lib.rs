//! Neighborhood-uniqueness analysis of networks.
//!
//! A node is unique when no other node's neighborhood (the subgraph induced
//! by its neighbors) is isomorphic to its own; an attacker who knows that
//! neighborhood can then re-identify the node. This crate computes
//! uniqueness for arbitrary graphs, closed-form predictions for
//! Erdős–Rényi graphs, uniqueness maps and boundaries over random model
//! families, and uniform edge sampling with unbiased estimators.

pub mod analytic;
pub mod anonymize;
pub mod canon;
pub mod metrics;
pub mod models;
pub mod rng;
pub mod sweep;
pub mod error;
pub mod graph;

pub use canon::{are_isomorphic_oracle, certificate, Certificate};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, LoadedGraph, SummaryStats};
