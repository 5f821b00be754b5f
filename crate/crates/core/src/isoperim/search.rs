use super::{decide, extract_labels, subpartition_cost, DecisionOutcome, MisoResult};
use crate::{Error, Extrema, NodeWeights, Result, RootedTree};

/// Hard cap on bisection rounds.
pub const MAX_ITERATIONS: usize = 128;

/// Bisection continues past [`iteration_floor`] until the bracket is this
/// narrow relative to its upper end, or until the midpoint is no longer
/// representable strictly inside it.
pub const RELATIVE_GAP: f64 = 1e-13;

/// Initial bracket `[(min flow + min p) / total omega, (total flow + total p) / min omega]`.
pub fn initial_bracket(extrema: &Extrema) -> (f64, f64) {
    let e = extrema;
    (
        (e.phi_star_min + e.p_star_min) / e.omega_star_sum,
        (e.phi_star_sum + e.p_star_sum) / e.omega_star_min,
    )
}

/// `ceil(log2(2 omega*^2 (beta0 - alpha0)) - log2(phi_min + p_min))`,
/// clamped to `1..=MAX_ITERATIONS`: the number of halvings that separates
/// distinct costs when all weights are integers.
pub fn iteration_floor(extrema: &Extrema) -> usize {
    let (alpha0, beta0) = initial_bracket(extrema);
    let lower = extrema.phi_star_min + extrema.p_star_min;
    let span = 2.0 * extrema.omega_star_sum.powi(2) * (beta0 - alpha0);
    let t = (span.log2() - lower.log2()).ceil();
    if t.is_nan() || t < 1.0 {
        1
    } else if t > MAX_ITERATIONS as f64 {
        MAX_ITERATIONS
    } else {
        t as usize
    }
}

/// Shared bisection driver. `decide` answers the threshold question and
/// `label` turns the final witness into cluster labels; everything else,
/// including floating-point order, is common to both engines.
pub(crate) fn bisect<D, L>(
    tree: &RootedTree,
    weights: &NodeWeights,
    extrema: &Extrema,
    k: usize,
    decide: D,
    label: L,
) -> Result<MisoResult>
where
    D: Fn(f64) -> DecisionOutcome,
    L: Fn(&DecisionOutcome) -> Result<Vec<usize>>,
{
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if tree.n() != weights.len() {
        return Err(Error::LengthMismatch {
            left: tree.n(),
            right: weights.len(),
        });
    }
    if k > tree.n() {
        return Err(Error::Infeasible { k });
    }

    let (mut alpha, mut beta) = initial_bracket(extrema);
    let floor = iteration_floor(extrema);
    let mut witness = None;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        if iterations >= floor && beta - alpha <= RELATIVE_GAP * beta {
            break;
        }
        let mid = (alpha + beta) / 2.0;
        if !(mid > alpha && mid < beta) {
            break;
        }
        let outcome = decide(mid);
        if outcome.feasible {
            beta = mid;
            witness = Some(outcome);
        } else {
            alpha = mid;
        }
        iterations += 1;
    }

    let outcome = match witness {
        Some(w) => w,
        None => {
            let w = decide(beta);
            if !w.feasible {
                return Err(Error::Infeasible { k });
            }
            w
        }
    };
    let labels = label(&outcome)?;
    let miso = subpartition_cost(&labels, tree, weights)?;
    Ok(MisoResult {
        miso,
        labels,
        outcome,
        iterations,
        alpha_final: alpha,
        beta_final: beta,
    })
}

/// Minimises the k-subpartition cost by bisection over the decision
/// threshold.
///
/// The bracket starts at [`initial_bracket`]; every round asks [`decide`]
/// about the midpoint and keeps the witness of the last feasible answer.
/// The reported `miso` is the exact cost of that witness, which lies in
/// `(alpha_final, beta_final]` whenever `k >= 2`.
pub fn solve_miso(
    tree: &RootedTree,
    weights: &NodeWeights,
    extrema: &Extrema,
    k: usize,
) -> Result<MisoResult> {
    bisect(
        tree,
        weights,
        extrema,
        k,
        |threshold| decide(tree, weights, k, threshold),
        |outcome| extract_labels(outcome, k),
    )
}
