use crate::{ClassLabels, Error, Result};

/// Fraction of points not covered by the best one-to-one matching of
/// predicted clusters `1..=k` to ground-truth classes. Residual points
/// (label `0`) are always counted as errors.
pub fn misclassification_rate(pred: &[usize], truth: &ClassLabels) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::EmptyInput);
    }
    let k = pred.iter().copied().max().unwrap_or(0);
    let mut table = vec![vec![0i64; truth.class_count]; k];
    for (&p, &t) in pred.iter().zip(&truth.labels) {
        if p > 0 {
            table[p - 1][t] += 1;
        }
    }
    let matched = hungarian_max(&table);
    Ok(1.0 - matched as f64 / pred.len() as f64)
}

/// Largest total of a one-to-one matching between rows and columns of a
/// nonnegative table. Rectangular tables are padded with zeros.
///
/// Kuhn-Munkres with row potentials, O(m^3) for `m = max(rows, cols)`.
pub fn hungarian_max(table: &[Vec<i64>]) -> i64 {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    let m = rows.max(cols);
    if m == 0 {
        return 0;
    }
    let cost = |i: usize, j: usize| -> i64 {
        if i < rows && j < cols {
            -table[i][j]
        } else {
            0
        }
    };

    // 1-based arrays; column 0 is the virtual start column
    let mut u = vec![0i64; m + 1];
    let mut v = vec![0i64; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=m {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=m)
        .filter(|&j| owner[j] > 0)
        .map(|j| -cost(owner[j] - 1, j - 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn truth(labels: &[usize]) -> ClassLabels {
        ClassLabels::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn relabelled_prediction_is_perfect() {
        let t = truth(&[0, 0, 1, 2, 2]);
        assert_eq!(misclassification_rate(&[3, 3, 1, 2, 2], &t).unwrap(), 0.0);
    }

    #[test]
    fn residuals_are_errors() {
        let t = truth(&[0, 1, 1]);
        assert_eq!(misclassification_rate(&[0, 0, 0], &t).unwrap(), 1.0);
        assert!((misclassification_rate(&[1, 0, 2], &t).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn small_mismatch() {
        let t = truth(&[0, 0, 0, 1]);
        assert_eq!(misclassification_rate(&[1, 1, 2, 2], &t).unwrap(), 0.25);
    }

    #[test]
    fn length_mismatch() {
        let t = truth(&[0, 1]);
        assert!(matches!(
            misclassification_rate(&[1], &t),
            Err(Error::LengthMismatch { .. })
        ));
    }

    fn best_by_permutation(table: &[Vec<i64>]) -> i64 {
        fn go(row: usize, table: &[Vec<i64>], used: &mut Vec<bool>) -> i64 {
            if row == table.len() {
                return 0;
            }
            // leaving a row unmatched is allowed when rows outnumber columns
            let mut best = go(row + 1, table, used);
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.max(table[row][j] + go(row + 1, table, used));
                    used[j] = false;
                }
            }
            best
        }
        let cols = table.first().map_or(0, Vec::len);
        go(0, table, &mut vec![false; cols])
    }

    proptest! {
        #[test]
        fn matches_exhaustive_assignment(
            rows in 1usize..6,
            cols in 1usize..6,
            cells in proptest::collection::vec(0i64..20, 36),
        ) {
            let table: Vec<Vec<i64>> = (0..rows).map(|i| cells[i * 6..i * 6 + cols].to_vec()).collect();
            prop_assert_eq!(hungarian_max(&table), best_by_permutation(&table));
        }

        #[test]
        fn invariant_under_relabelling(
            pairs in proptest::collection::vec((0usize..4, 0usize..3), 3..60),
            shift in 1usize..4,
        ) {
            let pred: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            let raw: Vec<String> = pairs.iter().map(|p| p.1.to_string()).collect();
            let t = ClassLabels::from_identifiers(&raw);
            let rate = misclassification_rate(&pred, &t).unwrap();
            prop_assert!((0.0..=1.0).contains(&rate));
            // rotate cluster ids 1..=4 and class ids
            let rotated: Vec<usize> = pred.iter().map(|&l| if l == 0 { 0 } else { (l - 1 + shift) % 4 + 1 }).collect();
            let t2 = ClassLabels {
                labels: t.labels.iter().map(|&c| (c + shift) % t.class_count).collect(),
                class_count: t.class_count,
            };
            let rate2 = misclassification_rate(&rotated, &t2).unwrap();
            prop_assert!((rate - rate2).abs() < 1e-12);
        }
    }
}
