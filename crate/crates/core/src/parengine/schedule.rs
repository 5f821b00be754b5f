use crate::RootedTree;

/// Depth-major layout of a rooted tree.
///
/// Vertices are stored at their breadth-first position (root at 0, siblings
/// by `child_id`), so every depth occupies a contiguous range of positions
/// and the children of any vertex form a contiguous sub-range of the next
/// depth. Reversing the positions of one depth gives exactly the order in
/// which the sequential walk visits that depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthSchedule {
    /// Vertex at each position.
    pub(crate) vertex: Vec<usize>,
    /// Position of each vertex.
    pub(crate) position: Vec<usize>,
    /// Position of the parent of the vertex at each position (root: itself).
    pub(crate) parent_pos: Vec<usize>,
    /// Depth `D` spans positions `level_start[D]..level_start[D + 1]`.
    pub(crate) level_start: Vec<usize>,
    /// Children of position `q` span `child_start[q]..child_start[q + 1]`.
    pub(crate) child_start: Vec<usize>,
}

impl DepthSchedule {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let vertex: Vec<usize> = tree.bfs_order.iter().rev().copied().collect();
        let mut position = vec![0; n];
        for (q, &v) in vertex.iter().enumerate() {
            position[v] = q;
        }
        let parent_pos = vertex
            .iter()
            .enumerate()
            .map(|(q, &v)| tree.parent[v].map_or(q, |p| position[p]))
            .collect();

        let mut level_start = vec![0; tree.max_depth + 2];
        for &v in &vertex {
            level_start[tree.depth[v] + 1] += 1;
        }
        for d in 1..level_start.len() {
            level_start[d] += level_start[d - 1];
        }

        let mut child_count = vec![0; n + 1];
        for &v in &vertex {
            if let Some(p) = tree.parent[v] {
                child_count[position[p] + 1] += 1;
            }
        }
        // children of q start right after the children of every earlier position
        let mut child_start = child_count;
        child_start[0] = 1;
        for q in 1..=n {
            child_start[q] += child_start[q - 1];
        }

        Self {
            vertex,
            position,
            parent_pos,
            level_start,
            child_start,
        }
    }

    pub fn depth_count(&self) -> usize {
        self.level_start.len() - 1
    }

    /// Vertices of depth `d`, grouped by parent; each group is in increasing
    /// `child_id`, groups follow the breadth-first order of their parents.
    pub fn groups(&self, d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![self.vertex[0]]];
        }
        (self.level_start[d - 1]..self.level_start[d])
            .map(|q| self.vertex[self.child_start[q]..self.child_start[q + 1]].to_vec())
            .filter(|g| !g.is_empty())
            .collect()
    }

    /// The order in which the sequential walk visits depth `d`.
    pub fn canonical_order(&self, d: usize) -> Vec<usize> {
        self.vertex[self.level_start[d]..self.level_start[d + 1]]
            .iter()
            .rev()
            .copied()
            .collect()
    }
}
