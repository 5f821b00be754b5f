//! End-to-end clustering: distances, spanning tree, weights, bisection.

use std::time::Instant;

use crate::affinity::{self, distance_matrix, NodeWeights};
use crate::isoperim::{solve_miso, MisoResult};
use crate::mst::{prim_mst, RootedTree};
use crate::parengine::{par_solve_miso, with_workers};
use crate::{DataSet, Error, Extrema, Result};

/// Kernel width of the flow function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sigma {
    /// Multiple of the mean off-diagonal distance.
    Auto(f64),
    Fixed(f64),
}

impl Default for Sigma {
    fn default() -> Self {
        Sigma::Auto(1.0)
    }
}

impl std::str::FromStr for Sigma {
    type Err = Error;

    /// `auto`, `auto*<factor>` or a positive number.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("sigma must be `auto`, `auto*F` or a positive number, got {s:?}"));
        let s = s.trim();
        let (auto, value) = match s.strip_prefix("auto") {
            Some("") => return Ok(Sigma::Auto(1.0)),
            Some(rest) => (true, rest.strip_prefix('*').ok_or_else(bad)?),
            None => (false, s),
        };
        let v: f64 = value.parse().map_err(|_| bad())?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(bad());
        }
        Ok(if auto { Sigma::Auto(v) } else { Sigma::Fixed(v) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Reference solver, everything on one worker.
    Sequential,
    /// Parallel engine on a pool of the given size.
    Parallel { workers: usize },
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Sequential => "sequential",
            Engine::Parallel { .. } => "parallel",
        }
    }

    pub fn workers(&self) -> usize {
        match self {
            Engine::Sequential => 1,
            Engine::Parallel { workers } => *workers,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub k: usize,
    pub sigma: Sigma,
    pub alpha: f64,
    pub root: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            k: 2,
            sigma: Sigma::default(),
            alpha: 0.0,
            root: 0,
        }
    }
}

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTimings {
    /// Distances, sigma resolution, weights and potentials.
    pub affinity_ms: f64,
    pub mst_ms: f64,
    /// Extrema and bisection.
    pub partition_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// The resolved kernel width.
    pub sigma: f64,
    pub tree: RootedTree,
    pub weights: NodeWeights,
    pub extrema: Extrema,
    pub result: MisoResult,
    pub timings: PhaseTimings,
}

/// Everything up to (not including) the bisection.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub sigma: f64,
    pub tree: RootedTree,
    pub weights: NodeWeights,
    pub extrema: Extrema,
}

/// Distances, sigma, spanning tree, weights and extrema on the current pool.
pub fn prepare(data: &DataSet, config: &PipelineConfig) -> Result<Prepared> {
    let mut t = PhaseTimings::default();
    prepare_timed(data, config, &mut t)
}

fn prepare_timed(data: &DataSet, config: &PipelineConfig, t: &mut PhaseTimings) -> Result<Prepared> {
    if config.k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if config.root >= data.n() {
        return Err(Error::InvalidArgument(format!(
            "root {} out of range for {} points",
            config.root,
            data.n()
        )));
    }
    let start = Instant::now();
    let dist = distance_matrix(data)?;
    let sigma = match config.sigma {
        Sigma::Fixed(s) => s,
        Sigma::Auto(factor) => {
            let mean = dist.mean_off_diagonal();
            if mean <= 0.0 {
                return Err(Error::InvalidArgument(
                    "all points coincide; automatic sigma is undefined".into(),
                ));
            }
            factor * mean
        }
    };
    let weights = NodeWeights::compute(&dist, sigma, config.alpha)?;
    t.affinity_ms = ms(start);

    let start = Instant::now();
    let tree = prim_mst(&dist, sigma, config.root)?;
    t.mst_ms = ms(start);
    drop(dist);

    let start = Instant::now();
    let extrema = affinity::extrema(&tree, &weights)?;
    t.partition_ms = ms(start);
    Ok(Prepared {
        sigma,
        tree,
        weights,
        extrema,
    })
}

pub fn run(data: &DataSet, config: &PipelineConfig, engine: Engine) -> Result<PipelineOutput> {
    with_workers(engine.workers(), || {
        let start = Instant::now();
        let mut timings = PhaseTimings::default();
        let prepared = prepare_timed(data, config, &mut timings)?;

        let solve = Instant::now();
        let Prepared {
            sigma,
            tree,
            weights,
            extrema,
        } = prepared;
        let result = match engine {
            Engine::Sequential => solve_miso(&tree, &weights, &extrema, config.k)?,
            Engine::Parallel { .. } => par_solve_miso(&tree, &weights, &extrema, config.k)?,
        };
        timings.partition_ms += ms(solve);
        timings.total_ms = ms(start);
        Ok(PipelineOutput {
            sigma,
            tree,
            weights,
            extrema,
            result,
            timings,
        })
    })?
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}
