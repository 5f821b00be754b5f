mod common;

use common::*;
use isoclust::affinity::{distance_matrix, flow, DistanceMatrix};
use isoclust::mst::prim_mst;
use isoclust::DataSet;
use proptest::prelude::*;

fn random_dist(seed: u64, n: usize, d: usize) -> DistanceMatrix {
    let mut r = rng(seed);
    let data = DataSet::new(random_points(&mut r, n, d), n, d).unwrap();
    distance_matrix(&data).unwrap()
}

/// Flow of the weakest edge on the tree path between `a` and `b`.
fn path_min_flow(tree: &isoclust::RootedTree, mut a: usize, mut b: usize) -> f64 {
    let mut m = f64::INFINITY;
    while a != b {
        if tree.depth[a] >= tree.depth[b] {
            m = m.min(tree.parent_flow[a]);
            a = tree.parent[a].unwrap();
        } else {
            m = m.min(tree.parent_flow[b]);
            b = tree.parent[b].unwrap();
        }
    }
    m
}

#[test]
fn prim_matches_kruskal_on_random_point_sets() {
    for seed in 0..40 {
        let n = 2 + (seed as usize * 7) % 120;
        let dist = random_dist(seed, n, 3);
        let sigma = dist.mean_off_diagonal();
        let root = (seed as usize) % n;
        let tree = prim_mst(&dist, sigma, root).unwrap();
        assert_eq!(tree.root, root);
        let ours = tree_edges(&tree);
        let reference = kruskal_edges(&dist, sigma);
        assert_eq!(ours, reference, "seed {seed}");
        assert_eq!(edge_total(&dist, sigma, &ours), edge_total(&dist, sigma, &reference));
    }
}

#[test]
fn stored_flows_are_edge_flows() {
    let dist = random_dist(99, 60, 5);
    let sigma = 0.7;
    let tree = prim_mst(&dist, sigma, 3).unwrap();
    for v in 0..tree.n() {
        match tree.parent[v] {
            Some(p) => {
                assert_eq!(tree.parent_flow[v], flow(dist.get(v, p), sigma));
                assert_eq!(tree.depth[v], tree.depth[p] + 1);
            }
            None => assert_eq!(v, 3),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cut_property_holds(seed in any::<u64>(), n in 2usize..40, d in 1usize..6) {
        let dist = random_dist(seed, n, d);
        let sigma = dist.mean_off_diagonal().max(1e-12);
        let tree = prim_mst(&dist, sigma, 0).unwrap();
        prop_assert_eq!(tree_edges(&tree).len(), n - 1);
        for i in 0..n {
            for j in i + 1..n {
                let f = flow(dist.get(i, j), sigma);
                prop_assert!(f <= path_min_flow(&tree, i, j));
            }
        }
    }
}
