//! # relnet
//!
//! A two-class classifier that maps every attribute of a dataset onto a node
//! of an unreliable complete network. Arc reliabilities are the trainable
//! weights; the normalized attribute values of an instance become the node
//! reliabilities. An instance is classified by estimating the source-to-sink
//! reliability of that network with an early-stopping Monte Carlo scheme and
//! comparing it with the class-1 ratio of the training data.
//!
//! Module map:
//!
//! - [`dataset`]: loading, class mapping and correlation-signed min-max scaling.
//! - [`ubcn`]: network topology, state sampling, connectivity, exact oracle.
//! - [`reliability`]: Monte Carlo estimation and the interval stopping rule.
//! - [`sso`]: simplified swarm optimization over arc reliabilities.
//! - [`trainer`]: fitness, training loop, prediction and cross-validation.
//! - [`model`]: the persisted JSON model.

pub mod dataset;
pub mod error;
pub mod model;
pub mod reliability;
pub mod seed;
pub mod sso;
pub mod trainer;
pub mod ubcn;

pub use dataset::{ClassMap, DataFormat, LabelPosition, RawDataset, TransformSpec, TransformedDataset};
pub use error::{Error, Result};
pub use model::Model;
pub use reliability::{BoundsTable, DecisionMode, ImcsOutcome, SimParams};
pub use sso::{SsoParams, Swarm};
pub use trainer::{CrossValReport, FoldReport, RunRecord, TrainConfig};
pub use ubcn::{ComponentState, ReliabilityAssignment, Topology};
