//! Sequential reference solver for the k-subpartition isoperimetric problem
//! on weighted trees.
//!
//! For a family of disjoint vertex sets, the cost is the largest
//! normalized sparsity `(flow(boundary(A)) + p(A)) / omega(A)` over its
//! members. [`solve_miso`] minimises that cost over all families of `k`
//! disjoint nonempty sets by bisecting on a threshold, using [`decide`] to
//! answer "is there a family with cost at most `N`?".

mod decide;
mod oracle;
mod search;

pub use decide::{decide, Branch};
pub use oracle::{brute_force_miso, OracleSolution, BRUTE_FORCE_MAX_N};
pub use search::{iteration_floor, solve_miso, MAX_ITERATIONS, RELATIVE_GAP};

pub(crate) use search::bisect;

use crate::{Error, NodeWeights, Result, RootedTree};

/// Witness returned by one run of the decision procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionOutcome {
    pub feasible: bool,
    pub clusters_found: usize,
    /// `cut[i]` is set when vertex `i` was severed from its parent and
    /// seeded a cluster.
    pub cut: Vec<bool>,
    /// Cut vertex whose cluster absorbed vertex `i`, if any.
    pub eta: Vec<Option<usize>>,
    /// Normalized sparsity of each cluster at the moment it was cut, in cut
    /// order.
    pub cluster_sparsities: Vec<f64>,
}

/// Minimising k-subpartition and the final bisection bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct MisoResult {
    /// Recomputed cost of the returned subpartition.
    pub miso: f64,
    /// `0` marks residual vertices, `1..=k` the clusters.
    pub labels: Vec<usize>,
    pub outcome: DecisionOutcome,
    pub iterations: usize,
    pub alpha_final: f64,
    pub beta_final: f64,
}

impl MisoResult {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let k = self.outcome.clusters_found;
        let mut sizes = vec![0; k];
        for &l in self.labels.iter().filter(|&&l| l > 0) {
            sizes[l - 1] += 1;
        }
        sizes
    }

    pub fn residual_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == 0).count()
    }
}

/// Cost of a labelled subpartition: the maximum over labels `1..=k` of
/// `(boundary flow + potential) / weight`. Label `0` vertices belong to no
/// cluster and only count as outside endpoints of boundary edges.
pub fn subpartition_cost(labels: &[usize], tree: &RootedTree, weights: &NodeWeights) -> Result<f64> {
    let n = tree.n();
    if labels.len() != n || weights.len() != n {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: n,
        });
    }
    let k = labels.iter().copied().max().unwrap_or(0);
    if k == 0 {
        return Err(Error::InvalidArgument("labelling has no clusters".into()));
    }
    let mut scratch = vec![(0.0, 0.0, 0.0); k + 1];
    cost_with(labels, k, tree, weights, &mut scratch)
}

/// `scratch` holds `(boundary, potential, weight)` per label and must have
/// length `k + 1`.
pub(crate) fn cost_with(
    labels: &[usize],
    k: usize,
    tree: &RootedTree,
    weights: &NodeWeights,
    scratch: &mut [(f64, f64, f64)],
) -> Result<f64> {
    scratch.fill((0.0, 0.0, 0.0));
    let mut size = vec![0usize; k + 1];
    for u in 0..labels.len() {
        let a = labels[u];
        size[a] += 1;
        scratch[a].1 += weights.potential[u];
        scratch[a].2 += weights.omega[u];
        if let Some(v) = tree.parent[u] {
            let b = labels[v];
            if a != b {
                let f = tree.parent_flow[u];
                scratch[a].0 += f;
                scratch[b].0 += f;
            }
        }
    }
    let mut cost = f64::NEG_INFINITY;
    for label in 1..=k {
        if size[label] == 0 {
            return Err(Error::EmptyCluster { label });
        }
        let (boundary, p, w) = scratch[label];
        cost = cost.max((boundary + p) / w);
    }
    Ok(cost)
}

/// Turns a feasible witness into per-vertex labels.
///
/// Cut vertices are numbered by an exclusive scan over `cut`, the inverse
/// map `psi` sends cluster number to cut vertex, and every vertex takes the
/// number of the cut vertex recorded in `eta` (or `0` if none).
pub fn extract_labels(outcome: &DecisionOutcome, k: usize) -> Result<Vec<usize>> {
    if !outcome.feasible {
        return Err(Error::Infeasible { k });
    }
    let mut scan = Vec::with_capacity(outcome.cut.len());
    let mut acc = 0;
    for &c in &outcome.cut {
        scan.push(acc);
        acc += usize::from(c);
    }
    let mut psi = vec![usize::MAX; acc];
    for (i, &c) in outcome.cut.iter().enumerate() {
        if c {
            psi[scan[i]] = i;
        }
    }
    labels_from_psi(&psi, &outcome.eta)
}

/// Cluster `j + 1` collects every vertex whose `eta` equals `psi[j]`.
pub(crate) fn labels_from_psi(psi: &[usize], eta: &[Option<usize>]) -> Result<Vec<usize>> {
    let mut cluster_of = vec![0; eta.len()];
    for (j, &v) in psi.iter().enumerate() {
        cluster_of[v] = j + 1;
    }
    eta.iter()
        .map(|e| match e {
            None => Ok(0),
            Some(v) if cluster_of[*v] > 0 => Ok(cluster_of[*v]),
            Some(v) => Err(Error::InvalidArgument(format!(
                "eta points at {v}, which is not a cut vertex"
            ))),
        })
        .collect()
}
