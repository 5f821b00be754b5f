//! Reduction and scan primitives with a fixed combination order.
//!
//! Every primitive splits its input into a balanced binary tree whose shape
//! depends only on the input length. Subtrees above a size threshold are
//! evaluated with `rayon::join`, below it sequentially; because the
//! association order is the same either way, results are bit-identical for
//! any worker count.

use rayon::prelude::*;

use crate::{Error, Result};

/// Leaves of the reduction tree are summed left to right.
const LEAF: usize = 256;
/// Subtrees smaller than this are not worth a task.
const SPLIT: usize = 1 << 14;
/// Block length of the three-phase scan.
const SCAN_BLOCK: usize = 1 << 12;

/// Minimum value and the smallest index attaining it.
///
/// Infinities are accepted; NaN is not ordered and must not appear.
pub fn min_reduce(values: &[f64]) -> Result<(f64, usize)> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(min_tree(values, 0))
}

fn min_tree(values: &[f64], base: usize) -> (f64, usize) {
    if values.len() <= LEAF {
        let mut best = (values[0], base);
        for (i, &v) in values.iter().enumerate().skip(1) {
            if v < best.0 {
                best = (v, base + i);
            }
        }
        return best;
    }
    let mid = values.len() / 2;
    let (l, r) = values.split_at(mid);
    let (a, b) = if values.len() >= SPLIT {
        rayon::join(|| min_tree(l, base), || min_tree(r, base + mid))
    } else {
        (min_tree(l, base), min_tree(r, base + mid))
    };
    // the left half holds the smaller indices, so it wins ties
    if b.0 < a.0 {
        b
    } else {
        a
    }
}

/// Sum with a fixed balanced pairing: halves are split at `len / 2` until
/// at most 256 elements remain, which are then added left to right.
pub fn sum_reduce(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(sum_tree(values))
}

/// [`sum_reduce`] for callers that have already checked for emptiness.
pub(crate) fn sum_tree(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, &v| acc + v);
    }
    let (l, r) = values.split_at(values.len() / 2);
    if values.len() >= SPLIT {
        let (a, b) = rayon::join(|| sum_tree(l), || sum_tree(r));
        a + b
    } else {
        sum_tree(l) + sum_tree(r)
    }
}

/// `out[i] = in[0] + ... + in[i-1]`, `out[0] = 0`.
///
/// Three phases: per-block totals in parallel, a sequential scan over the
/// block totals, then a parallel local scan of every block seeded with its
/// offset. Total work is linear in the input length.
pub fn exclusive_scan(values: &[usize]) -> Vec<usize> {
    let mut out = vec![0; values.len()];
    if values.len() <= SCAN_BLOCK {
        scan_block(values, &mut out, 0);
        return out;
    }
    let totals: Vec<usize> = values.par_chunks(SCAN_BLOCK).map(|b| b.iter().sum()).collect();
    let mut offsets = Vec::with_capacity(totals.len());
    let mut acc = 0;
    for t in totals {
        offsets.push(acc);
        acc += t;
    }
    out.par_chunks_mut(SCAN_BLOCK)
        .zip(values.par_chunks(SCAN_BLOCK))
        .zip(offsets)
        .for_each(|((dst, src), offset)| scan_block(src, dst, offset));
    out
}

fn scan_block(src: &[usize], dst: &mut [usize], mut acc: usize) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = acc;
        acc += s;
    }
}
