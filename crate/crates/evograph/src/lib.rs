//! Analysis and generative inference for time series of undirected graph
//! snapshots.
//!
//! The crate takes an ordered series of graph snapshots (for example monthly
//! AS-level Internet topologies), measures its static patterns (degree
//! distribution, distance distribution, local clustering) and its dynamic
//! patterns (densification power laws, new-new edge scarcity, initial-degree
//! distribution of new nodes, distance profile of new edges), estimates the
//! four parameters of a generative model from those patterns, and infers
//! future snapshots with a three-step procedure: preparation, initialization
//! from per-element presence histories, and generation via distance-guided
//! preferential attachment.
//!
//! The core is `no_std`-compatible (allocation required): disable default
//! features and enable `libm` for float math. File formats and the command
//! line live in the companion `evograph-cli` crate.
//!
//! All randomized operations take an explicit seeded generator and consume it
//! in a documented order, so equal seeds give bit-identical results.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("evograph needs either the `std` feature or the `libm` feature for float math");

pub mod baselines;
pub mod error;
pub mod estimator;
pub mod fixture;
pub mod generator;
pub mod graph;
mod math;
pub mod patterns;
pub mod series;
mod stats;
pub mod validation;

pub use error::{
    BaselineError, EstimatorError, GeneratorError, GraphError, PatternError, SeriesError,
    ValidationError,
};
pub use estimator::{Aggregation, ModelParams, SeriesEstimates, StabilityEstimate};
pub use graph::{Distance, Edge, NodeId, Snapshot};
pub use series::{EdgeClassCounts, EdgeClassification, GraphSeries, StateSequence, TotalGraph};
