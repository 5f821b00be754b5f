use super::DecisionOutcome;
use crate::{NodeWeights, RootedTree};

/// What the decision procedure does with a vertex's current group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Sever the group from its parent and record it as a cluster.
    Cut,
    /// Merge the group into the parent's group.
    Join,
    /// Leave the group out; the parent edge becomes part of the parent's
    /// boundary.
    Discard,
}

impl Branch {
    /// Classifies a group with accumulated potential `p` and weight `omega`
    /// hanging from an edge of flow `flow`. The root uses `flow = 0`.
    ///
    /// Both engines call this so that their comparisons are bit-identical.
    #[inline]
    pub fn classify(flow: f64, p: f64, omega: f64, threshold: f64) -> Branch {
        let budget = threshold * omega;
        if flow + p <= budget {
            Branch::Cut
        } else if p - flow < budget {
            Branch::Join
        } else {
            Branch::Discard
        }
    }
}

/// Greedy bottom-up test for a `k`-subpartition of cost at most `threshold`.
///
/// Vertices are visited in `tree.bfs_order`. A vertex whose group satisfies
/// `flow + p <= N * omega` becomes a cluster and its parent edge is charged
/// to the parent's potential; otherwise the group joins the parent if
/// `p - flow < N * omega`, and is discarded (again charging the edge to the
/// parent) if not. The root is treated as hanging from an edge of zero flow,
/// so it can only be cut or discarded. The walk stops once `k` clusters have
/// been cut.
///
/// Works on private copies of the weights; the inputs are not modified.
pub fn decide(tree: &RootedTree, weights: &NodeWeights, k: usize, threshold: f64) -> DecisionOutcome {
    let n = tree.n();
    let mut omega = weights.omega.clone();
    let mut p = weights.potential.clone();
    let mut cut = vec![false; n];
    let mut joined = vec![None; n];
    let mut sparsities = Vec::new();

    for &x in &tree.bfs_order {
        if sparsities.len() >= k {
            break;
        }
        let f = if x == tree.root { 0.0 } else { tree.parent_flow[x] };
        match (Branch::classify(f, p[x], omega[x], threshold), tree.parent[x]) {
            (Branch::Cut, parent) => {
                cut[x] = true;
                sparsities.push((f + p[x]) / omega[x]);
                if let Some(u) = parent {
                    p[u] += f;
                }
            }
            (Branch::Join, Some(u)) => {
                joined[x] = Some(u);
                omega[u] += omega[x];
                p[u] += p[x];
            }
            (_, Some(u)) => p[u] += f,
            (_, None) => {}
        }
    }

    let eta = resolve_eta(tree, &cut, &joined);
    DecisionOutcome {
        feasible: sparsities.len() == k,
        clusters_found: sparsities.len(),
        cut,
        eta,
        cluster_sparsities: sparsities,
    }
}

/// Top-down pass: a cut vertex represents itself, a joined vertex inherits
/// its parent's representative, anything else has none.
fn resolve_eta(tree: &RootedTree, cut: &[bool], joined: &[Option<usize>]) -> Vec<Option<usize>> {
    let mut eta = vec![None; tree.n()];
    for &x in tree.bfs_order.iter().rev() {
        eta[x] = if cut[x] {
            Some(x)
        } else {
            joined[x].and_then(|u| eta[u])
        };
    }
    eta
}
