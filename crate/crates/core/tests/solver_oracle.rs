mod common;

use common::*;
use isoclust::affinity::extrema;
use isoclust::isoperim::{brute_force_miso, decide, solve_miso, subpartition_cost};
use isoclust::{NodeWeights, RootedTree};
use proptest::prelude::*;

/// Every labelling in `{0..=k}^n`, scored from scratch.
fn naive_optimum(tree: &RootedTree, w: &NodeWeights, k: usize) -> f64 {
    let n = tree.n();
    let mut labels = vec![0usize; n];
    let mut best = f64::INFINITY;
    loop {
        if let Some(c) = cost_from_scratch(&labels, k, tree, w) {
            best = best.min(c);
        }
        let mut i = 0;
        while i < n && labels[i] == k {
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        labels[i] += 1;
    }
}

fn instance(seed: u64, n: usize, with_potential: bool) -> (RootedTree, NodeWeights) {
    let mut r = rng(seed);
    let tree = random_tree(&mut r, n);
    let omega: Vec<f64> = (0..n).map(|_| uniform(&mut r, 0.1, 2.0)).collect();
    let p = if with_potential {
        let pts = random_points(&mut r, n, 2);
        potentials_of(&pts, 2, 1.0)
    } else {
        vec![0.0; n]
    };
    (tree, weights(omega, p))
}

#[test]
fn exhaustive_oracle_agrees_with_naive_enumeration() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 5);
        let k = 1 + (seed as usize % 3).min(n - 1);
        let (tree, w) = instance(seed, n, seed % 2 == 0);
        let oracle = brute_force_miso(&tree, &w, k).unwrap();
        let naive = naive_optimum(&tree, &w, k);
        assert!(rel_close(oracle.miso, naive, 1e-12), "seed {seed}: {} vs {naive}", oracle.miso);
        let rescored = cost_from_scratch(&oracle.labels, k, &tree, &w).unwrap();
        assert!(rel_close(rescored, oracle.miso, 1e-12));
    }
}

#[test]
fn solver_matches_exhaustive_search() {
    for seed in 0..150 {
        let n = 3 + (seed as usize % 8);
        let k = 2 + (seed as usize / 8) % 2;
        let (tree, w) = instance(1000 + seed, n, seed % 3 == 0);
        let e = extrema(&tree, &w).unwrap();
        let got = solve_miso(&tree, &w, &e, k).unwrap();
        let want = brute_force_miso(&tree, &w, k).unwrap();
        assert!(rel_close(got.miso, want.miso, 1e-6), "seed {seed}: {} vs {}", got.miso, want.miso);
        let rescored = cost_from_scratch(&got.labels, k, &tree, &w).unwrap();
        assert!(rel_close(rescored, got.miso, 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feasible_witnesses_respect_threshold(seed in any::<u64>(), n in 2usize..30, k in 1usize..5, t in 0.0f64..3.0) {
        let (tree, w) = instance(seed, n, seed % 2 == 0);
        let out = decide(&tree, &w, k, t);
        prop_assert!(out.clusters_found <= k);
        if out.feasible {
            let labels = isoclust::isoperim::extract_labels(&out, k).unwrap();
            let cost = subpartition_cost(&labels, &tree, &w).unwrap();
            prop_assert!(cost <= t * (1.0 + 1e-9), "cost {} > {}", cost, t);
        }
    }

    #[test]
    fn feasibility_is_monotone(seed in any::<u64>(), n in 2usize..30, k in 1usize..5, a in 0.0f64..2.0, b in 0.0f64..2.0) {
        let (tree, w) = instance(seed, n, seed % 2 == 1);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if decide(&tree, &w, k, lo).feasible {
            prop_assert!(decide(&tree, &w, k, hi).feasible);
        }
    }
}
