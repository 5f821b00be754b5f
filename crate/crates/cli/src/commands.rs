use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use isoclust::affinity::distance_matrix;
use isoclust::dataset::{generate_random, load_labels, load_points, Format, LoadOptions};
use isoclust::eval::{benchmark, misclassification_rate, write_csv, BenchSpec};
use isoclust::parengine::default_workers;
use isoclust::pipeline::{run, Engine, PipelineConfig, PipelineOutput};
use isoclust::{ClassLabels, DataSet};
use serde_json::json;

use crate::{BenchArgs, ClusterArgs, EngineChoice, EngineName, FormatChoice, EXIT_MISMATCH};

/// Parsed `--generate` value.
#[derive(Debug, Clone, PartialEq)]
struct GenerateSpec {
    n: usize,
    d: usize,
    k: usize,
    seed: Option<u64>,
    spread: f64,
}

fn parse_generate(s: &str) -> Result<GenerateSpec> {
    let (mut n, mut d, mut k, mut seed, mut spread) = (None, None, None, None, 1.0);
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .with_context(|| format!("expected key=value in --generate, got {part:?}"))?;
        let bad = || format!("bad value for {key} in --generate: {value:?}");
        match key.trim() {
            "n" => n = Some(value.trim().parse().with_context(bad)?),
            "d" => d = Some(value.trim().parse().with_context(bad)?),
            "k" => k = Some(value.trim().parse().with_context(bad)?),
            "seed" => seed = Some(value.trim().parse().with_context(bad)?),
            "spread" => spread = value.trim().parse().with_context(bad)?,
            other => bail!("unknown key {other:?} in --generate"),
        }
    }
    match (n, d, k) {
        (Some(n), Some(d), Some(k)) => Ok(GenerateSpec { n, d, k, seed, spread }),
        _ => bail!("--generate needs n, d and k"),
    }
}

fn load(args: &ClusterArgs) -> Result<(DataSet, Option<ClassLabels>)> {
    if let Some(spec) = &args.generate {
        let g = parse_generate(spec)?;
        let (data, truth) = generate_random(g.n, g.d, g.k, g.seed.unwrap_or(args.seed), g.spread)?;
        return Ok((data, Some(truth)));
    }
    let path = args.input.as_deref().context("either --input or --generate is required")?;
    let format = match args.format {
        FormatChoice::Csv => Format::Csv,
        FormatChoice::Whitespace => Format::Whitespace,
        FormatChoice::Auto => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Format::detect(&text)
        }
    };
    let options = LoadOptions {
        format,
        label_column: args.label_column,
        header: args.header,
    };
    let (data, mut truth) = load_points(path, &options)?;
    if let Some(t) = &args.truth {
        truth = Some(load_labels(t)?);
    }
    Ok((data, truth))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn same_output(a: &PipelineOutput, b: &PipelineOutput) -> bool {
    a.sigma.to_bits() == b.sigma.to_bits() && a.tree == b.tree && a.weights == b.weights && a.result == b.result
}

pub fn cluster(args: &ClusterArgs) -> Result<ExitCode> {
    let (mut data, truth) = load(args)?;
    if args.standardize {
        data.standardize();
    }
    if let Some(t) = &truth {
        if t.len() != data.n() {
            bail!("{} truth labels for {} points", t.len(), data.n());
        }
    }
    let config = PipelineConfig {
        k: usize::try_from(args.k).context("k too large")?,
        sigma: args.sigma,
        alpha: args.alpha,
        root: args.root,
    };
    let workers = args.workers.filter(|&w| w > 0).unwrap_or_else(default_workers);
    let parallel = Engine::Parallel { workers };

    let (out, matched) = match args.engine {
        EngineChoice::Seq => (run(&data, &config, Engine::Sequential)?, None),
        EngineChoice::Par => (run(&data, &config, parallel)?, None),
        EngineChoice::Both => {
            let seq = run(&data, &config, Engine::Sequential)?;
            let par = run(&data, &config, parallel)?;
            let same = same_output(&seq, &par);
            (seq, Some(same))
        }
    };
    let result = &out.result;
    let misclassification = truth
        .as_ref()
        .map(|t| misclassification_rate(&result.labels, t))
        .transpose()?;

    if let Some(path) = &args.labels_out {
        let mut text = String::with_capacity(result.labels.len() * 3);
        for l in &result.labels {
            text.push_str(&l.to_string());
            text.push('\n');
        }
        write_file(path, &text)?;
    }
    if let Some(path) = &args.tree_out {
        write_file(path, &out.tree.dump())?;
    }
    if let Some(path) = &args.distances_out {
        write_file(path, &distance_matrix(&data)?.to_csv())?;
    }

    let engine_name = match args.engine {
        EngineChoice::Seq => "sequential",
        EngineChoice::Par => "parallel",
        EngineChoice::Both => "both",
    };
    let summary = json!({
        "schema": 1,
        "n": data.n(),
        "d": data.dim(),
        "k": config.k,
        "engine": engine_name,
        "workers": if args.engine == EngineChoice::Seq { 1 } else { workers },
        "sigma": out.sigma,
        "alpha": config.alpha,
        "root": config.root,
        "miso": result.miso,
        "iterations": result.iterations,
        "alpha_final": result.alpha_final,
        "beta_final": result.beta_final,
        "cluster_sizes": result.cluster_sizes(),
        "residual_count": result.residual_count(),
        "misclassification": misclassification,
        "match": matched,
        "timings": {
            "affinity_ms": out.timings.affinity_ms,
            "mst_ms": out.timings.mst_ms,
            "partition_ms": out.timings.partition_ms,
            "total_ms": out.timings.total_ms,
        },
    });
    let text = serde_json::to_string_pretty(&summary)? + "\n";
    match &args.summary_out {
        Some(path) => write_file(path, &text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }

    if matched == Some(false) {
        eprintln!("error: sequential and parallel engines disagree");
        return Ok(ExitCode::from(EXIT_MISMATCH));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn bench(args: &BenchArgs) -> Result<ExitCode> {
    let workers = args.workers.filter(|&w| w > 0).unwrap_or_else(default_workers);
    let mut engines: Vec<Engine> = args
        .engines
        .iter()
        .map(|e| match e {
            EngineName::Seq => Engine::Sequential,
            EngineName::Par => Engine::Parallel { workers },
        })
        .collect();
    engines.dedup();
    let spec = BenchSpec {
        sizes: args.sizes.clone(),
        dims: args.dims.clone(),
        ks: args.k.clone(),
        engines,
        seeds: args.seeds.clone(),
        reps: args.reps,
        spread: args.spread,
        sigma: args.sigma,
        alpha: args.alpha,
    };
    let outcome = benchmark(&spec)?;
    match &args.csv_out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&outcome.records, io::BufWriter::new(file))?;
        }
        None => write_csv(&outcome.records, io::stdout().lock())?,
    }
    for f in &outcome.failures {
        eprintln!(
            "failed: dataset={} n={} d={} k={} engine={}: {}",
            f.dataset,
            f.n,
            f.d,
            f.k,
            f.engine.name(),
            f.error
        );
    }
    if outcome.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_generate() {
        let g = parse_generate("n=100,d=5,k=3,seed=1").unwrap();
        assert_eq!(g, GenerateSpec { n: 100, d: 5, k: 3, seed: Some(1), spread: 1.0 });
        let g = parse_generate("n=10, d=2, k=2, spread=0.5").unwrap();
        assert_eq!(g.seed, None);
        assert_eq!(g.spread, 0.5);
        assert!(parse_generate("n=10,d=2").is_err());
        assert!(parse_generate("n=10,d=2,k=2,x=1").is_err());
        assert!(parse_generate("n=ten,d=2,k=2").is_err());
    }
}
