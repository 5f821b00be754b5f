use super::cost_with;
use crate::{Error, NodeWeights, Result, RootedTree};

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Minimiser found by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub miso: f64,
    pub labels: Vec<usize>,
}

/// Exhaustive minimum of the subpartition cost over every assignment of
/// vertices to `{0 (outside), 1..=k}` with all `k` classes nonempty.
/// Connectivity is not required.
///
/// Labellings are enumerated in canonical form (cluster `c` first appears
/// before cluster `c + 1`), which visits each subpartition exactly once.
pub fn brute_force_miso(tree: &RootedTree, weights: &NodeWeights, k: usize) -> Result<OracleSolution> {
    let n = tree.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLargeForBruteForce {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    if k == 0 || k > n {
        return Err(Error::Infeasible { k });
    }
    let mut search = Search {
        tree,
        weights,
        k,
        labels: vec![0; n],
        scratch: vec![(0.0, 0.0, 0.0); k + 1],
        best: None,
    };
    search.assign(0, 0)?;
    let (miso, labels) = search.best.ok_or(Error::Infeasible { k })?;
    Ok(OracleSolution { miso, labels })
}

struct Search<'a> {
    tree: &'a RootedTree,
    weights: &'a NodeWeights,
    k: usize,
    labels: Vec<usize>,
    scratch: Vec<(f64, f64, f64)>,
    best: Option<(f64, Vec<usize>)>,
}

impl Search<'_> {
    fn assign(&mut self, vertex: usize, used: usize) -> Result<()> {
        let n = self.labels.len();
        // not enough vertices left to open the remaining clusters
        if self.k - used > n - vertex {
            return Ok(());
        }
        if vertex == n {
            let cost = cost_with(&self.labels, self.k, self.tree, self.weights, &mut self.scratch)?;
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.labels.clone()));
            }
            return Ok(());
        }
        for label in 0..=(used + 1).min(self.k) {
            self.labels[vertex] = label;
            self.assign(vertex + 1, used.max(label))?;
        }
        self.labels[vertex] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoperim::fixtures::*;

    #[test]
    fn path_optimum() {
        let (t, w) = path_abc();
        let s = brute_force_miso(&t, &w, 2).unwrap();
        assert_eq!(s.miso, 0.1);
        assert_eq!(s.labels, vec![1, 1, 2]);
    }

    #[test]
    fn whole_tree_single_cluster() {
        let (t, w) = edge(0.7);
        let s = brute_force_miso(&t, &w, 1).unwrap();
        assert_eq!(s.miso, 0.0);
        assert_eq!(s.labels, vec![1, 1]);
    }

    #[test]
    fn pigeonhole_and_size_limits() {
        let (t, w) = edge(0.7);
        assert!(matches!(brute_force_miso(&t, &w, 3), Err(Error::Infeasible { k: 3 })));
        let parent = (0..13).map(|i| (i > 0).then_some(0)).collect();
        let big = RootedTree::from_parents(parent, vec![0.5; 13]).unwrap();
        let bw = NodeWeights::from_arrays(vec![1.0; 13], vec![0.0; 13]).unwrap();
        assert!(matches!(
            brute_force_miso(&big, &bw, 2),
            Err(Error::TooLargeForBruteForce { .. })
        ));
    }
}
