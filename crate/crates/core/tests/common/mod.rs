//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use isoclust::affinity::{flow, DistanceMatrix};
use isoclust::{NodeWeights, RootedTree};
use rand::SeedableRng;
use rand_distr::{Distribution, Uniform};
use rand_pcg::Pcg64;

pub fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

/// Uniform draw in `[lo, hi)`.
pub fn uniform(rng: &mut Pcg64, lo: f64, hi: f64) -> f64 {
    Uniform::new(lo, hi).unwrap().sample(rng)
}

pub fn index(rng: &mut Pcg64, n: usize) -> usize {
    Uniform::new(0, n).unwrap().sample(rng)
}

/// Uniform in `(0, 1]`.
pub fn unit_open_below(rng: &mut Pcg64) -> f64 {
    1.0 - uniform(rng, 0.0, 1.0)
}

pub fn shuffle(rng: &mut Pcg64, v: &mut [usize]) {
    for i in (1..v.len()).rev() {
        let j = index(rng, i + 1);
        v.swap(i, j);
    }
}

/// Random recursive tree on `n` vertices with a shuffled labelling and
/// edge flows in `(0, 1]`.
pub fn random_tree(rng: &mut Pcg64, n: usize) -> RootedTree {
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut perm);
    let mut parent = vec![None; n];
    let mut parent_flow = vec![0.0; n];
    for i in 1..n {
        let p = index(rng, i);
        parent[perm[i]] = Some(perm[p]);
        parent_flow[perm[i]] = unit_open_below(rng);
    }
    RootedTree::from_parents(parent, parent_flow).expect("valid random tree")
}

/// Points in `[0, 1)^d`, row-major.
pub fn random_points(rng: &mut Pcg64, n: usize, d: usize) -> Vec<f64> {
    (0..n * d).map(|_| uniform(rng, 0.0, 1.0)).collect()
}

pub fn euclid(points: &[f64], d: usize, i: usize, j: usize) -> f64 {
    points[i * d..(i + 1) * d]
        .iter()
        .zip(&points[j * d..(j + 1) * d])
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `p_i = alpha * sum_j |x_i - x_j|`.
pub fn potentials_of(points: &[f64], d: usize, alpha: f64) -> Vec<f64> {
    let n = points.len() / d;
    (0..n)
        .map(|i| alpha * (0..n).map(|j| euclid(points, d, i, j)).sum::<f64>())
        .collect()
}

pub fn weights(omega: Vec<f64>, potential: Vec<f64>) -> NodeWeights {
    NodeWeights::from_arrays(omega, potential).expect("valid weights")
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Maximum-flow spanning tree by Kruskal, as sorted `(min, max)` pairs.
pub fn kruskal_edges(dist: &DistanceMatrix, sigma: f64) -> Vec<(usize, usize)> {
    let n = dist.n();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((flow(dist.get(i, j), sigma), i, j));
        }
    }
    edges.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut dsu = Dsu((0..n).collect());
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for (_, i, j) in edges {
        if dsu.union(i, j) {
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

pub fn tree_edges(tree: &RootedTree) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = (0..tree.n())
        .filter_map(|v| tree.parent[v].map(|p| (v.min(p), v.max(p))))
        .collect();
    out.sort_unstable();
    out
}

/// Total flow of an edge set, summed in sorted order.
pub fn edge_total(dist: &DistanceMatrix, sigma: f64, edges: &[(usize, usize)]) -> f64 {
    let mut f: Vec<f64> = edges.iter().map(|&(i, j)| flow(dist.get(i, j), sigma)).collect();
    f.sort_by(f64::total_cmp);
    f.iter().sum()
}

pub fn kahan_sum(values: &[f64]) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Cost of a labelling computed from scratch: for every class, the flow
/// on tree edges with exactly one end inside, plus its potential, over its
/// weight; the maximum over classes `1..=k`. `None` if a class is empty.
pub fn cost_from_scratch(labels: &[usize], k: usize, tree: &RootedTree, w: &NodeWeights) -> Option<f64> {
    let mut worst: f64 = 0.0;
    for c in 1..=k {
        let members: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == c).collect();
        if members.is_empty() {
            return None;
        }
        let mut boundary = 0.0;
        for v in 0..tree.n() {
            if let Some(p) = tree.parent[v] {
                if (labels[v] == c) != (labels[p] == c) {
                    boundary += tree.parent_flow[v];
                }
            }
        }
        let p: f64 = members.iter().map(|&v| w.potential[v]).sum();
        let om: f64 = members.iter().map(|&v| w.omega[v]).sum();
        worst = worst.max((boundary + p) / om);
    }
    Some(worst)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
