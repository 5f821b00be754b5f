//! Dense distance matrix and the flow, weight and potential functions.
//!
//! `flow(d) = exp(-d / sigma)` is the similarity of two points. A point's
//! weight `omega` is the total flow to every *other* point (the self pair
//! contributes nothing) and its potential `p` is `alpha` times its total
//! distance to every other point.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::parengine::{min_reduce, sum_reduce, sum_tree};
use crate::{DataSet, Error, Result, RootedTree};

/// Largest `n` whose `n * n` matrix of `f64` stays below 16 GiB.
pub const MAX_POINTS: usize = 46_340;

/// Symmetric `n x n` matrix of Euclidean distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    d: Vec<f64>,
    n: usize,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    /// Wraps a full matrix. Checks shape, symmetry, zero diagonal and
    /// finiteness, but not the triangle inequality.
    pub fn from_full(d: Vec<f64>, n: usize) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::LengthMismatch {
                left: d.len(),
                right: n * n,
            });
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!("d[{i}][{i}] is not zero")));
            }
            for j in 0..i {
                let v = d[i * n + j];
                if !(v.is_finite() && v >= 0.0) || v != d[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "d[{i}][{j}] must be finite, nonnegative and symmetric"
                    )));
                }
            }
        }
        Ok(Self { d, n })
    }

    /// Mean over the `n (n - 1)` off-diagonal entries.
    pub fn mean_off_diagonal(&self) -> f64 {
        let rows: Vec<f64> = (0..self.n)
            .into_par_iter()
            .map(|i| sum_tree(self.row(i)))
            .collect();
        sum_tree(&rows) / (self.n * (self.n - 1)) as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Pairwise distances. Each unordered pair is evaluated once into the upper
/// triangle, rows in parallel; the lower triangle is then mirrored in tiles.
pub fn distance_matrix(data: &DataSet) -> Result<DistanceMatrix> {
    let n = data.n();
    if n > MAX_POINTS {
        return Err(Error::MemoryCap { n, cap: MAX_POINTS });
    }

    let mut d = vec![0.0; n * n];
    d.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
        let xi = data.row(i);
        for (j, slot) in row.iter_mut().enumerate().skip(i + 1) {
            *slot = euclidean(xi, data.row(j));
        }
    });

    const TILE: usize = 64;
    for bi in (0..n).step_by(TILE) {
        for bj in (0..=bi).step_by(TILE) {
            for i in bi..(bi + TILE).min(n) {
                for j in bj..(bj + TILE).min(i) {
                    d[i * n + j] = d[j * n + i];
                }
            }
        }
    }
    Ok(DistanceMatrix { d, n })
}

#[inline]
pub fn flow(distance: f64, sigma: f64) -> f64 {
    (-distance / sigma).exp()
}

/// `omega[i]` = sum over `j != i` of `flow(d[i][j], sigma)`.
///
/// Each row is summed with [`sum_reduce`]'s fixed pairing over a length-`n`
/// buffer whose diagonal slot holds zero.
pub fn vertex_weights(dist: &DistanceMatrix, sigma: f64) -> Vec<f64> {
    let n = dist.n();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![0.0; n],
            |buf, i| {
                for (j, (slot, &d)) in buf.iter_mut().zip(dist.row(i)).enumerate() {
                    *slot = if j == i { 0.0 } else { flow(d, sigma) };
                }
                sum_tree(buf)
            },
        )
        .collect()
}

/// `p[i] = alpha * sum_j d[i][j]`.
pub fn potentials(dist: &DistanceMatrix, alpha: f64) -> Vec<f64> {
    if alpha == 0.0 {
        return vec![0.0; dist.n()];
    }
    (0..dist.n())
        .into_par_iter()
        .map(|i| alpha * sum_tree(dist.row(i)))
        .collect()
}

/// Per-vertex weight and potential arrays.
///
/// `sigma` and `alpha` record the parameters the arrays were derived from;
/// they are `None` when the arrays were supplied directly.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeWeights {
    pub omega: Vec<f64>,
    pub potential: Vec<f64>,
    pub sigma: Option<f64>,
    pub alpha: Option<f64>,
}

impl NodeWeights {
    pub fn compute(dist: &DistanceMatrix, sigma: f64, alpha: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "alpha must be nonnegative, got {alpha}"
            )));
        }
        let mut w = Self::from_arrays(vertex_weights(dist, sigma), potentials(dist, alpha))
            .map_err(|e| match e {
                Error::InvalidArgument(msg) => Error::InvalidArgument(format!(
                    "{msg} (sigma = {sigma} is too small for this data)"
                )),
                other => other,
            })?;
        w.sigma = Some(sigma);
        w.alpha = Some(alpha);
        Ok(w)
    }

    pub fn from_arrays(omega: Vec<f64>, potential: Vec<f64>) -> Result<Self> {
        if omega.len() != potential.len() {
            return Err(Error::LengthMismatch {
                left: omega.len(),
                right: potential.len(),
            });
        }
        if let Some(i) = omega.iter().position(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "omega[{i}] = {} is not positive",
                omega[i]
            )));
        }
        if let Some(i) = potential.iter().position(|p| !(*p >= 0.0 && p.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "p[{i}] = {} is not nonnegative",
                potential[i]
            )));
        }
        Ok(Self {
            omega,
            potential,
            sigma: None,
            alpha: None,
        })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
}

/// Sums and minima of flow (over tree edges), weight and potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub phi_star_sum: f64,
    pub phi_star_min: f64,
    pub omega_star_sum: f64,
    pub omega_star_min: f64,
    pub p_star_sum: f64,
    pub p_star_min: f64,
}

pub fn extrema(tree: &RootedTree, weights: &NodeWeights) -> Result<Extrema> {
    if tree.n() != weights.len() {
        return Err(Error::LengthMismatch {
            left: tree.n(),
            right: weights.len(),
        });
    }
    let flows: Vec<f64> = (0..tree.n())
        .filter(|&u| u != tree.root)
        .map(|u| tree.parent_flow[u])
        .collect();
    Ok(Extrema {
        phi_star_sum: sum_reduce(&flows)?,
        phi_star_min: min_reduce(&flows)?.0,
        omega_star_sum: sum_reduce(&weights.omega)?,
        omega_star_min: min_reduce(&weights.omega)?.0,
        p_star_sum: sum_reduce(&weights.potential)?,
        p_star_min: min_reduce(&weights.potential)?.0,
    })
}
