//! Runtime benchmark harness.
//!
//! Each configuration runs the full pipeline once as a discarded warm-up and
//! then `reps` more times; every phase reports the median over those runs.
//! Configurations run one after another so that timings do not interfere.

use std::io::Write;

use serde::Serialize;

use super::misclassification_rate;
use crate::dataset::generate_random;
use crate::pipeline::{run, Engine, PipelineConfig, Sigma};
use crate::{ClassLabels, DataSet, Error, Result};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BenchRecord {
    pub dataset: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub engine: String,
    pub workers: usize,
    pub affinity_ms: f64,
    pub mst_ms: f64,
    pub partition_ms: f64,
    pub total_ms: f64,
    pub miso: f64,
    pub misclassification: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub sizes: Vec<usize>,
    pub dims: Vec<usize>,
    pub ks: Vec<usize>,
    pub engines: Vec<Engine>,
    pub seeds: Vec<u64>,
    pub reps: usize,
    pub spread: f64,
    pub sigma: Sigma,
    pub alpha: f64,
}

impl Default for BenchSpec {
    fn default() -> Self {
        Self {
            sizes: vec![1024, 2048, 4096, 8192, 16384],
            dims: vec![40],
            ks: vec![10],
            engines: vec![Engine::Sequential, Engine::Parallel { workers: 0 }],
            seeds: vec![1],
            reps: 3,
            spread: 1.0,
            sigma: Sigma::default(),
            alpha: 0.0,
        }
    }
}

/// A configuration that could not be measured.
#[derive(Debug)]
pub struct BenchFailure {
    pub dataset: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub engine: Engine,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<BenchFailure>,
}

/// Times one dataset under one engine.
pub fn measure(
    name: &str,
    data: &DataSet,
    truth: Option<&ClassLabels>,
    config: &PipelineConfig,
    engine: Engine,
    reps: usize,
) -> Result<BenchRecord> {
    let reps = reps.max(1);
    run(data, config, engine)?;
    let mut runs = Vec::with_capacity(reps);
    for _ in 0..reps {
        runs.push(run(data, config, engine)?);
    }
    let median = |f: &dyn Fn(usize) -> f64| {
        let mut v: Vec<f64> = (0..reps).map(f).collect();
        v.sort_by(f64::total_cmp);
        v[reps / 2]
    };
    let last = runs.last().expect("at least one run");
    let misclassification = truth
        .map(|t| misclassification_rate(&last.result.labels, t))
        .transpose()?;
    Ok(BenchRecord {
        dataset: name.to_string(),
        n: data.n(),
        d: data.dim(),
        k: config.k,
        engine: engine.name().to_string(),
        workers: match engine {
            Engine::Parallel { workers: 0 } => rayon::current_num_threads(),
            e => e.workers(),
        },
        affinity_ms: median(&|i| runs[i].timings.affinity_ms),
        mst_ms: median(&|i| runs[i].timings.mst_ms),
        partition_ms: median(&|i| runs[i].timings.partition_ms),
        total_ms: median(&|i| runs[i].timings.total_ms),
        miso: last.result.miso,
        misclassification,
    })
}

/// Sweeps sizes x dimensions x cluster counts x seeds x engines on
/// generated Gaussian blobs.
pub fn benchmark(spec: &BenchSpec) -> Result<BenchOutcome> {
    if spec.sizes.is_empty() || spec.dims.is_empty() || spec.ks.is_empty() {
        return Err(Error::InvalidArgument("benchmark needs sizes, dimensions and k".into()));
    }
    if spec.engines.is_empty() || spec.seeds.is_empty() {
        return Err(Error::InvalidArgument("benchmark needs engines and seeds".into()));
    }
    let mut outcome = BenchOutcome::default();
    for &n in &spec.sizes {
        for &d in &spec.dims {
            for &k in &spec.ks {
                for &seed in &spec.seeds {
                    let name = format!("random-s{seed}");
                    let (data, truth) = match generate_random(n, d, k, seed, spec.spread) {
                        Ok(x) => x,
                        Err(error) => {
                            for &engine in &spec.engines {
                                outcome.failures.push(BenchFailure {
                                    dataset: name.clone(),
                                    n,
                                    d,
                                    k,
                                    engine,
                                    error: Error::InvalidArgument(error.to_string()),
                                });
                            }
                            continue;
                        }
                    };
                    let config = PipelineConfig {
                        k,
                        sigma: spec.sigma,
                        alpha: spec.alpha,
                        root: 0,
                    };
                    for &engine in &spec.engines {
                        match measure(&name, &data, Some(&truth), &config, engine, spec.reps) {
                            Ok(r) => outcome.records.push(r),
                            Err(error) => outcome.failures.push(BenchFailure {
                                dataset: name.clone(),
                                n,
                                d,
                                k,
                                engine,
                                error,
                            }),
                        }
                    }
                }
            }
        }
    }
    Ok(outcome)
}

/// Writes records with the header
/// `dataset,n,d,k,engine,workers,affinity_ms,mst_ms,partition_ms,total_ms,miso,misclassification`.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record([
            "dataset",
            "n",
            "d",
            "k",
            "engine",
            "workers",
            "affinity_ms",
            "mst_ms",
            "partition_ms",
            "total_ms",
            "miso",
            "misclassification",
        ])?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_produces_matching_records() {
        let spec = BenchSpec {
            sizes: vec![64, 128],
            dims: vec![5],
            ks: vec![3],
            engines: vec![Engine::Sequential, Engine::Parallel { workers: 2 }],
            reps: 3,
            ..BenchSpec::default()
        };
        let out = benchmark(&spec).unwrap();
        assert!(out.failures.is_empty());
        assert_eq!(out.records.len(), 4);
        for pair in out.records.chunks(2) {
            assert_eq!(pair[0].miso, pair[1].miso);
            assert_eq!(pair[0].engine, "sequential");
            assert_eq!(pair[1].workers, 2);
        }
        for r in &out.records {
            assert!(r.total_ms >= 0.0 && r.affinity_ms >= 0.0);
            let m = r.misclassification.unwrap();
            assert!((0.0..=1.0).contains(&m));
        }

        let mut buf = Vec::new();
        write_csv(&out.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "dataset,n,d,k,engine,workers,affinity_ms,mst_ms,partition_ms,total_ms,miso,misclassification"
        );
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn header_without_records() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("dataset,n,d,"));
    }

    #[test]
    fn invalid_combinations_become_failures() {
        let spec = BenchSpec {
            sizes: vec![4],
            dims: vec![2],
            ks: vec![8],
            engines: vec![Engine::Sequential],
            ..BenchSpec::default()
        };
        let out = benchmark(&spec).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.failures.len(), 1);
        assert!(benchmark(&BenchSpec { sizes: vec![], ..BenchSpec::default() }).is_err());
    }
}
