//! Minimum spanning trees of the complete distance graph, stored as a
//! parent list.
//!
//! A [`RootedTree`] keeps, for every vertex, its parent and the flow on the
//! edge to that parent, together with the derived depth, sibling rank
//! (`child_id`) and the reverse breadth-first order in which the decision
//! procedures visit vertices.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::affinity::{flow, DistanceMatrix};
use crate::parengine::min_reduce;
use crate::{Error, Result};

/// Chunk length for the parallel frontier update.
const UPDATE_CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    pub parent: Vec<Option<usize>>,
    /// Flow on the edge to the parent; `0.0` at the root.
    pub parent_flow: Vec<f64>,
    pub depth: Vec<usize>,
    /// Rank of a vertex among the children of its parent.
    pub child_id: Vec<usize>,
    /// Breadth-first order from the root, children visited by `child_id`,
    /// reversed so the root comes last.
    pub bfs_order: Vec<usize>,
    pub root: usize,
    pub max_depth: usize,
}

impl RootedTree {
    /// Validates a parent list with explicit sibling ranks and derives depth
    /// and traversal order.
    pub fn new(
        parent: Vec<Option<usize>>,
        parent_flow: Vec<f64>,
        child_id: Vec<usize>,
    ) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if parent_flow.len() != n || child_id.len() != n {
            return Err(Error::InvalidTree("array lengths differ".into()));
        }
        let mut roots = parent.iter().enumerate().filter(|(_, p)| p.is_none());
        let root = match (roots.next(), roots.next()) {
            (Some((r, _)), None) => r,
            _ => return Err(Error::InvalidTree("expected exactly one root".into())),
        };
        if let Some(u) = parent.iter().position(|p| p.is_some_and(|p| p >= n)) {
            return Err(Error::InvalidTree(format!("parent of {u} out of range")));
        }

        let children = children_by_rank(&parent, &child_id)?;
        let order = bfs(root, &children);
        if order.len() != n {
            return Err(Error::InvalidTree("parent pointers contain a cycle".into()));
        }
        let mut depth = vec![0; n];
        for &u in &order {
            if let Some(p) = parent[u] {
                depth[u] = depth[p] + 1;
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let mut bfs_order = order;
        bfs_order.reverse();
        Ok(Self {
            parent,
            parent_flow,
            depth,
            child_id,
            bfs_order,
            root,
            max_depth,
        })
    }

    /// Like [`RootedTree::new`], ranking siblings by vertex index.
    pub fn from_parents(parent: Vec<Option<usize>>, parent_flow: Vec<f64>) -> Result<Self> {
        let mut seen = vec![0; parent.len()];
        let mut child_id = vec![0; parent.len()];
        for (u, p) in parent.iter().enumerate() {
            if let Some(&p) = p.as_ref().filter(|&&p| p < parent.len()) {
                child_id[u] = seen[p];
                seen[p] += 1;
            }
        }
        Self::new(parent, parent_flow, child_id)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Children of every vertex, ordered by `child_id`.
    pub fn children(&self) -> Vec<Vec<usize>> {
        children_by_rank(&self.parent, &self.child_id).expect("validated at construction")
    }

    /// Sum of parent-edge flows.
    pub fn total_flow(&self) -> f64 {
        (0..self.n())
            .filter(|&u| u != self.root)
            .map(|u| self.parent_flow[u])
            .sum()
    }

    /// One line per vertex: `id parent depth child_id parent_flow`, with `-`
    /// as the root's parent.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n() {
            let parent = self.parent[u].map_or_else(|| "-".to_string(), |p| p.to_string());
            writeln!(
                out,
                "{u} {parent} {} {} {}",
                self.depth[u], self.child_id[u], self.parent_flow[u]
            )
            .unwrap();
        }
        out
    }
}

fn children_by_rank(parent: &[Option<usize>], child_id: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = parent.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(u);
        }
    }
    for (p, kids) in children.iter_mut().enumerate() {
        kids.sort_by_key(|&c| child_id[c]);
        if kids.iter().enumerate().any(|(rank, &c)| child_id[c] != rank) {
            return Err(Error::InvalidTree(format!(
                "children of {p} do not carry ranks 0..{}",
                kids.len()
            )));
        }
    }
    Ok(children)
}

fn bfs(root: usize, children: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(children.len());
    order.push(root);
    let mut head = 0;
    while head < order.len() && order.len() <= children.len() {
        let u = order[head];
        head += 1;
        order.extend_from_slice(&children[u]);
    }
    order
}

/// Breadth-first order from the root (siblings by `child_id`), reversed.
/// Every vertex at depth `D` precedes every vertex at depth `D - 1`.
pub fn reverse_bfs_order(tree: &RootedTree) -> Vec<usize> {
    let mut order = bfs(tree.root, &tree.children());
    order.reverse();
    order
}

/// Prim's algorithm on the dense distance matrix.
///
/// Keeps the distance from every outside vertex to the tree and the tree
/// vertex realising it. Each step picks the outside vertex with the smallest
/// distance (smallest index on ties) by a min-reduction, records its parent,
/// depth and sibling rank, and then relaxes every outside vertex against the
/// new tree vertex in parallel. An existing attachment is only replaced by a
/// strictly shorter one.
pub fn prim_mst(dist: &DistanceMatrix, sigma: f64, root: usize) -> Result<RootedTree> {
    let n = dist.n();
    if root >= n {
        return Err(Error::InvalidArgument(format!(
            "root {root} out of range for {n} vertices"
        )));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }

    let mut parent = vec![None; n];
    let mut parent_flow = vec![0.0; n];
    let mut depth = vec![0; n];
    let mut child_id = vec![0; n];
    let mut child_count = vec![0usize; n];

    let mut in_tree = vec![false; n];
    let mut best: Vec<f64> = dist.row(root).to_vec();
    let mut attach = vec![root; n];
    in_tree[root] = true;
    best[root] = f64::INFINITY;

    for _ in 1..n {
        let (d, v) = min_reduce(&best)?;
        let u = attach[v];
        parent[v] = Some(u);
        parent_flow[v] = flow(d, sigma);
        depth[v] = depth[u] + 1;
        child_id[v] = child_count[u];
        child_count[u] += 1;
        in_tree[v] = true;
        best[v] = f64::INFINITY;

        let row = dist.row(v);
        best.par_chunks_mut(UPDATE_CHUNK)
            .zip(attach.par_chunks_mut(UPDATE_CHUNK))
            .zip(in_tree.par_chunks(UPDATE_CHUNK))
            .zip(row.par_chunks(UPDATE_CHUNK))
            .for_each(|(((best, attach), in_tree), row)| {
                for j in 0..best.len() {
                    if !in_tree[j] && row[j] < best[j] {
                        best[j] = row[j];
                        attach[j] = v;
                    }
                }
            });
    }

    let tree = RootedTree::new(parent, parent_flow, child_id)?;
    debug_assert_eq!(tree.depth, depth);
    Ok(tree)
}
