//! Depth-by-depth decision procedure.
//!
//! Depths are processed from the deepest to the root with a barrier in
//! between. Within a depth:
//!
//! 1. every vertex classifies its own group (cut / join / discard) in
//!    parallel; the group state of a depth is final once the deeper depth
//!    has committed, and nothing at this depth is written during the phase;
//! 2. an exclusive scan over the cut flags, taken in the sequential visiting
//!    order, finds how many vertices can be processed before the `k`-th cut;
//! 3. parents commit their children's updates in parallel, one parent per
//!    task, each applying its children in the sequential visiting order so
//!    that floating-point accumulation matches the reference engine.
//!
//! Child and parent depths live in disjoint halves of `split_at_mut`, so
//! phase 3 cannot be observed by phase 1 of the same depth.

use rayon::prelude::*;

use super::{exclusive_scan, DepthSchedule};
use crate::isoperim::{bisect, Branch, DecisionOutcome, MisoResult};
use crate::{Error, Extrema, NodeWeights, Result, RootedTree};

const MIN_TASK: usize = 512;

/// Parallel counterpart of [`crate::isoperim::decide`]; the outcome is
/// identical field for field.
pub fn par_decide(tree: &RootedTree, weights: &NodeWeights, k: usize, threshold: f64) -> DecisionOutcome {
    let schedule = DepthSchedule::new(tree);
    let flows = position_flows(tree, &schedule);
    decide_on(&schedule, &flows, weights, k, threshold)
}

/// Parent-edge flow at every position, zero at the root.
fn position_flows(tree: &RootedTree, s: &DepthSchedule) -> Vec<f64> {
    s.vertex
        .par_iter()
        .map(|&v| if v == tree.root { 0.0 } else { tree.parent_flow[v] })
        .collect()
}

fn decide_on(
    s: &DepthSchedule,
    flows: &[f64],
    weights: &NodeWeights,
    k: usize,
    threshold: f64,
) -> DecisionOutcome {
    let n = s.vertex.len();
    let mut omega: Vec<f64> = s.vertex.par_iter().map(|&v| weights.omega[v]).collect();
    let mut p: Vec<f64> = s.vertex.par_iter().map(|&v| weights.potential[v]).collect();
    // committed branch per position; None = never processed
    let mut taken: Vec<Option<Branch>> = vec![None; n];
    let mut sparsities = Vec::new();

    for depth in (0..s.depth_count()).rev() {
        if sparsities.len() >= k {
            break;
        }
        let (lo, hi) = (s.level_start[depth], s.level_start[depth + 1]);

        let branches: Vec<Branch> = (lo..hi)
            .into_par_iter()
            .with_min_len(MIN_TASK)
            .map(|q| Branch::classify(flows[q], p[q], omega[q], threshold))
            .collect();

        // sequential order within a depth is decreasing position
        let cut_bits: Vec<usize> = branches
            .par_iter()
            .rev()
            .map(|b| usize::from(*b == Branch::Cut))
            .collect();
        let before = exclusive_scan(&cut_bits);
        let room = k - sparsities.len();
        let processed = before.partition_point(|&c| c < room);

        for (i, &b) in branches.iter().rev().take(processed).enumerate() {
            let q = hi - 1 - i;
            taken[q] = Some(b);
            if b == Branch::Cut {
                sparsities.push((flows[q] + p[q]) / omega[q]);
            }
        }
        if depth == 0 {
            break;
        }

        let (parents_omega, children_omega) = omega.split_at_mut(lo);
        let (parents_p, children_p) = p.split_at_mut(lo);
        let plo = s.level_start[depth - 1];
        let taken = &taken[lo..hi];
        parents_omega[plo..]
            .par_iter_mut()
            .zip(parents_p[plo..].par_iter_mut())
            .enumerate()
            .with_min_len(MIN_TASK)
            .for_each(|(i, (w, pp))| {
                let q = plo + i;
                for c in (s.child_start[q]..s.child_start[q + 1]).rev() {
                    match taken[c - lo] {
                        Some(Branch::Join) => {
                            *w += children_omega[c - lo];
                            *pp += children_p[c - lo];
                        }
                        Some(_) => *pp += flows[c],
                        None => {}
                    }
                }
            });
    }

    let cut_pos: Vec<bool> = taken.par_iter().map(|b| *b == Some(Branch::Cut)).collect();
    let eta_pos = resolve_eta(s, &taken);

    let mut cut = vec![false; n];
    let mut eta = vec![None; n];
    cut.par_iter_mut()
        .zip(eta.par_iter_mut())
        .enumerate()
        .for_each(|(v, (c, e))| {
            let q = s.position[v];
            *c = cut_pos[q];
            *e = eta_pos[q].map(|r| s.vertex[r]);
        });

    DecisionOutcome {
        feasible: sparsities.len() == k,
        clusters_found: sparsities.len(),
        cut,
        eta,
        cluster_sparsities: sparsities,
    }
}

/// Representative position for every position, resolved top-down one
/// depth at a time.
fn resolve_eta(s: &DepthSchedule, taken: &[Option<Branch>]) -> Vec<Option<usize>> {
    let mut eta = vec![None; taken.len()];
    for depth in 0..s.depth_count() {
        let (lo, hi) = (s.level_start[depth], s.level_start[depth + 1]);
        let (upper, current) = eta.split_at_mut(lo);
        current[..hi - lo]
            .par_iter_mut()
            .enumerate()
            .with_min_len(MIN_TASK)
            .for_each(|(i, e)| {
                let q = lo + i;
                *e = match taken[q] {
                    Some(Branch::Cut) => Some(q),
                    Some(Branch::Join) => upper[s.parent_pos[q]],
                    _ => None,
                };
            });
    }
    eta
}

/// Labels from a feasible witness: cut vertices are numbered by a parallel
/// exclusive scan and every vertex takes the number of its representative.
pub fn par_extract_labels(outcome: &DecisionOutcome, k: usize) -> Result<Vec<usize>> {
    if !outcome.feasible {
        return Err(Error::Infeasible { k });
    }
    let bits: Vec<usize> = outcome.cut.par_iter().map(|&c| usize::from(c)).collect();
    let scan = exclusive_scan(&bits);
    outcome
        .eta
        .par_iter()
        .map(|e| match *e {
            None => Ok(0),
            Some(r) if outcome.cut[r] => Ok(scan[r] + 1),
            Some(r) => Err(Error::InvalidArgument(format!(
                "eta points at {r}, which is not a cut vertex"
            ))),
        })
        .collect()
}

/// Bisection driven by [`par_decide`]. Only the cut flags and
/// representatives of each feasible round are kept; labels are produced once
/// at the end.
pub fn par_solve_miso(
    tree: &RootedTree,
    weights: &NodeWeights,
    extrema: &Extrema,
    k: usize,
) -> Result<MisoResult> {
    if tree.n() != weights.len() {
        return Err(Error::LengthMismatch {
            left: tree.n(),
            right: weights.len(),
        });
    }
    let schedule = DepthSchedule::new(tree);
    let flows = position_flows(tree, &schedule);
    bisect(
        tree,
        weights,
        extrema,
        k,
        |threshold| decide_on(&schedule, &flows, weights, k, threshold),
        |outcome| par_extract_labels(outcome, k),
    )
}
