//! Deterministic data-parallel execution: reductions, scans, and the
//! depth-by-depth decision procedure.
//!
//! All parallel work runs on the current rayon pool. [`with_workers`] runs
//! a closure on a dedicated pool of a given size; outputs never depend on
//! that size.

mod decide;
mod primitives;
mod schedule;

pub use decide::{par_decide, par_extract_labels, par_solve_miso};
pub use primitives::{exclusive_scan, min_reduce, sum_reduce};
pub(crate) use primitives::sum_tree;
pub use schedule::DepthSchedule;

use crate::Result;

/// Environment variable consulted for the default worker count.
pub const WORKERS_ENV: &str = "ISOCLUST_WORKERS";

/// Runs `f` on a fresh pool with `workers` threads (0 means rayon's default).
pub fn with_workers<T, F>(workers: usize, f: F) -> Result<T>
where
    F: FnOnce() -> T + Send,
    T: Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    Ok(pool.install(f))
}

/// Worker count from [`WORKERS_ENV`], falling back to available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(max_workers)
}

pub fn max_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
