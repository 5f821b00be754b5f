//! Accuracy against ground truth and the runtime benchmark harness.

mod bench;
mod metrics;

pub use bench::{benchmark, measure, write_csv, BenchFailure, BenchOutcome, BenchRecord, BenchSpec};
pub use metrics::{hungarian_max, misclassification_rate};
