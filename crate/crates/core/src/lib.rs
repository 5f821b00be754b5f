//! Graph-based clustering by exact isoperimetric partitioning of trees.
//!
//! The pipeline turns a point cloud into a complete affinity graph, extracts
//! its minimum spanning tree with Prim's algorithm, and then finds the
//! k-subpartition of the tree that minimises the largest normalized sparsity
//! `(boundary flow + potential) / weight` over its parts. The minimisation is
//! a bisection over a threshold driven by a linear-time greedy decision
//! procedure.
//!
//! Two engines are provided and are required to agree bit for bit:
//!
//! - [`isoperim`]: the sequential reference solver, plus a brute-force
//!   oracle for tiny trees.
//! - [`parengine`]: deterministic data-parallel primitives and a depth-by-depth
//!   decision procedure built on them.
//!
//! ```
//! use isoclust::{dataset, pipeline::{self, Engine, PipelineConfig}};
//!
//! let (data, _) = dataset::generate_random(60, 3, 3, 7, 0.2).unwrap();
//! let config = PipelineConfig { k: 3, ..PipelineConfig::default() };
//! let out = pipeline::run(&data, &config, Engine::Sequential).unwrap();
//! assert_eq!(out.result.labels.len(), 60);
//! ```

pub mod affinity;
pub mod dataset;
mod error;
pub mod eval;
pub mod isoperim;
pub mod mst;
pub mod parengine;
pub mod pipeline;

pub use affinity::{DistanceMatrix, Extrema, NodeWeights};
pub use dataset::{ClassLabels, DataSet};
pub use error::{Error, Result};
pub use isoperim::{DecisionOutcome, MisoResult};
pub use mst::RootedTree;
