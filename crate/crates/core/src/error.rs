use std::path::PathBuf;

/// Errors produced anywhere in the clustering pipeline.
#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: expected {expected} columns, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, column {column}: cannot parse {cell:?} as a finite number")]
    BadCell {
        row: usize,
        column: usize,
        cell: String,
    },

    #[error("label column {column} is out of range for rows with {columns} columns")]
    LabelColumn { column: usize, columns: usize },

    #[error("dataset needs at least {required} points, found {found}")]
    TooFewPoints { required: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{n} points exceed the dense distance-matrix cap of {cap}")]
    MemoryCap { n: usize, cap: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("reduction over an empty array")]
    EmptyInput,

    #[error("no feasible {k}-subpartition found within bracket")]
    Infeasible { k: usize },

    #[error("brute force is limited to {max} vertices, got {n}")]
    TooLargeForBruteForce { n: usize, max: usize },

    #[error("cluster label {label} is empty")]
    EmptyCluster { label: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("failed to build worker pool: {0}")]
    WorkerPool(#[from] rayon::ThreadPoolBuildError),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
