//! Point sets, ground-truth labels, file loading and synthetic generation.
//!
//! Files are plain numeric matrices with one point per row, either
//! comma-separated or whitespace-separated. Row and column positions in
//! error messages are 1-based so they match what an editor shows.
//!
//! Synthetic data comes from `Pcg64` (PCG XSL RR 128/64, seeded through
//! `SeedableRng::seed_from_u64`): `k` centers are drawn uniformly in
//! `[0, 10)^d`, then point `i` is drawn from an isotropic Gaussian around
//! center `i mod k`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rand_pcg::Pcg64;

use crate::{Error, Result};

/// `n` points in `d` dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    points: Vec<f64>,
    n: usize,
    d: usize,
}

impl DataSet {
    pub fn new(points: Vec<f64>, n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewPoints { required: 2, found: n });
        }
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.len() != n * d {
            return Err(Error::LengthMismatch {
                left: points.len(),
                right: n * d,
            });
        }
        if let Some(pos) = points.iter().position(|x| !x.is_finite()) {
            return Err(Error::BadCell {
                row: pos / d + 1,
                column: pos % d + 1,
                cell: points[pos].to_string(),
            });
        }
        Ok(Self { points, n, d })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: d,
                    found: row.len(),
                });
            }
        }
        Self::new(rows.concat(), rows.len(), d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    /// Per-column z-scoring with the population standard deviation.
    /// Constant columns are centred and left at zero.
    pub fn standardize(&mut self) {
        let (n, d) = (self.n, self.d);
        for c in 0..d {
            let mean = (0..n).map(|i| self.points[i * d + c]).sum::<f64>() / n as f64;
            let var = (0..n)
                .map(|i| (self.points[i * d + c] - mean).powi(2))
                .sum::<f64>()
                / n as f64;
            let sd = var.sqrt();
            for i in 0..n {
                let x = &mut self.points[i * d + c];
                *x -= mean;
                if sd > 0.0 {
                    *x /= sd;
                }
            }
        }
    }

    /// Comma-separated text, one point per line. Uses the shortest decimal
    /// representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for (c, x) in self.row(i).iter().enumerate() {
                if c > 0 {
                    out.push(',');
                }
                write!(out, "{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Ground-truth class assignment, remapped to contiguous ids `0..class_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabels {
    pub labels: Vec<usize>,
    pub class_count: usize,
}

impl ClassLabels {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let class_count = labels.iter().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; class_count];
        for &l in &labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "class identifiers must be contiguous, {missing} is unused"
            )));
        }
        Ok(Self { labels, class_count })
    }

    /// Maps arbitrary identifiers to `0..c`. Identifiers are ordered
    /// numerically when they all parse as numbers, lexicographically otherwise.
    pub fn from_identifiers<S: AsRef<str>>(ids: &[S]) -> Self {
        let mut distinct: Vec<&str> = ids.iter().map(AsRef::as_ref).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let numeric: Option<Vec<f64>> = distinct.iter().map(|s| s.parse().ok()).collect();
        if let Some(values) = numeric {
            let mut paired: Vec<(f64, &str)> = values.into_iter().zip(distinct).collect();
            paired.sort_by(|a, b| a.0.total_cmp(&b.0));
            distinct = paired.into_iter().map(|(_, s)| s).collect();
        }
        let index: HashMap<&str, usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self {
            labels: ids.iter().map(|s| index[s.as_ref()]).collect(),
            class_count: distinct.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Whitespace,
}

impl Format {
    /// Comma-separated if the first non-blank line contains a comma.
    pub fn detect(text: &str) -> Self {
        match text.lines().find(|l| !l.trim().is_empty()) {
            Some(line) if line.contains(',') => Format::Csv,
            _ => Format::Whitespace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub format: Format,
    /// 0-based column holding class identifiers; stripped from the features.
    pub label_column: Option<usize>,
    /// Skip the first non-blank line.
    pub header: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            label_column: None,
            header: false,
        }
    }
}

pub fn load_points(path: &Path, options: &LoadOptions) -> Result<(DataSet, Option<ClassLabels>)> {
    let text = read(path)?;
    parse_points(&text, options)
}

pub fn parse_points(text: &str, options: &LoadOptions) -> Result<(DataSet, Option<ClassLabels>)> {
    let mut rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    if options.header {
        rows.next();
    }

    let mut points = Vec::new();
    let mut ids = Vec::new();
    let mut columns = None;
    let mut n = 0;
    for (line_no, line) in rows {
        let row = line_no + 1;
        let cells: Vec<&str> = match options.format {
            Format::Csv => line.split(',').map(str::trim).collect(),
            Format::Whitespace => line.split_whitespace().collect(),
        };
        let expected = *columns.get_or_insert(cells.len());
        if cells.len() != expected {
            return Err(Error::RaggedRow {
                row,
                expected,
                found: cells.len(),
            });
        }
        if let Some(lc) = options.label_column {
            if lc >= expected {
                return Err(Error::LabelColumn {
                    column: lc,
                    columns: expected,
                });
            }
        }
        for (c, cell) in cells.iter().enumerate() {
            if Some(c) == options.label_column {
                ids.push(cell.to_string());
                continue;
            }
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::BadCell {
                    row,
                    column: c + 1,
                    cell: cell.to_string(),
                })?;
            points.push(value);
        }
        n += 1;
    }

    let columns = columns.unwrap_or(0);
    let d = columns - usize::from(options.label_column.is_some());
    if n < 2 {
        return Err(Error::TooFewPoints { required: 2, found: n });
    }
    let data = DataSet::new(points, n, d)?;
    let labels = options
        .label_column
        .map(|_| ClassLabels::from_identifiers(&ids));
    Ok((data, labels))
}

/// One identifier per line; blank lines are ignored.
pub fn load_labels(path: &Path) -> Result<ClassLabels> {
    let text = read(path)?;
    let ids: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    Ok(ClassLabels::from_identifiers(&ids))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Gaussian blobs around `k` uniformly placed centers, assigned round-robin.
pub fn generate_random(
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
    spread: f64,
) -> Result<(DataSet, ClassLabels)> {
    if k == 0 || n < k || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "generator needs n >= k >= 1 and d >= 1 (n={n}, k={k}, d={d})"
        )));
    }
    if !(spread > 0.0 && spread.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "spread must be positive, got {spread}"
        )));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    let unit = Uniform::new(0.0, 10.0).expect("valid range");
    let centers: Vec<f64> = (0..k * d).map(|_| unit.sample(&mut rng)).collect();

    let mut points = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let c = i % k;
        for j in 0..d {
            let z: f64 = StandardNormal.sample(&mut rng);
            points.push(centers[c * d + j] + spread * z);
        }
        labels.push(c);
    }
    let data = DataSet::new(points, n, d)?;
    Ok((data, ClassLabels { labels, class_count: k }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn csv(text: &str, label_column: Option<usize>) -> Result<(DataSet, Option<ClassLabels>)> {
        parse_points(
            text,
            &LoadOptions {
                label_column,
                ..LoadOptions::default()
            },
        )
    }

    #[test]
    fn parses_plain_matrix() {
        let (data, labels) = csv("0,0\n1,0\n0,1", None).unwrap();
        assert_eq!((data.n(), data.dim()), (3, 2));
        assert_eq!(data.row(2), &[0.0, 1.0]);
        assert!(labels.is_none());
    }

    #[test]
    fn strips_label_column() {
        let (data, labels) = csv("0,0,A\n1,0,B", Some(2)).unwrap();
        assert_eq!(data.dim(), 2);
        assert_eq!(labels.unwrap().labels, vec![0, 1]);
    }

    #[test]
    fn numeric_labels_sort_numerically() {
        let labels = ClassLabels::from_identifiers(&["10", "9", "10", "2"]);
        assert_eq!(labels.labels, vec![2, 1, 2, 0]);
        assert_eq!(labels.class_count, 3);
    }

    #[test]
    fn whitespace_and_header() {
        let text = "x y\n  1   2\n\n3\t4\n";
        let opts = LoadOptions {
            format: Format::Whitespace,
            label_column: None,
            header: true,
        };
        let (data, _) = parse_points(text, &opts).unwrap();
        assert_eq!(data.as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(Format::detect(text), Format::Whitespace);
        assert_eq!(Format::detect("1,2\n"), Format::Csv);
    }

    #[test]
    fn reports_positions() {
        match csv("0,0\n1,0,3\n", None) {
            Err(Error::RaggedRow { row: 2, expected: 2, found: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match csv("0,0\n1,x\n", None) {
            Err(Error::BadCell { row: 2, column: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match csv("0,0\n1,inf\n", None) {
            Err(Error::BadCell { row: 2, column: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(csv("0,0\n", None), Err(Error::TooFewPoints { .. })));
        assert!(matches!(csv("0,0\n1,1", Some(5)), Err(Error::LabelColumn { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_points(Path::new("/nonexistent/points.csv"), &LoadOptions::default());
        assert!(matches!(err, Err(Error::Io { .. })));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_random(10, 5, 2, 7, 0.1).unwrap();
        let b = generate_random(10, 5, 2, 7, 0.1).unwrap();
        assert_eq!(a, b);
        let c = generate_random(10, 5, 2, 8, 0.1).unwrap();
        assert_ne!(a.0, c.0);
        assert_eq!(a.1.labels, vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn generator_degenerate_spread() {
        let (data, labels) = generate_random(3, 1, 3, 11, 1e-12).unwrap();
        assert_eq!(data.n(), 3);
        assert_eq!(labels.labels, vec![0, 1, 2]);
        assert_eq!(labels.class_count, 3);
    }

    #[test]
    fn generator_rejects_bad_arguments() {
        assert!(generate_random(2, 3, 3, 0, 1.0).is_err());
        assert!(generate_random(5, 0, 1, 0, 1.0).is_err());
        assert!(generate_random(5, 2, 0, 0, 1.0).is_err());
        assert!(generate_random(5, 2, 1, 0, 0.0).is_err());
    }

    #[test]
    fn standardize_centres_columns() {
        let mut data = DataSet::from_rows(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        data.standardize();
        assert_eq!(data.as_slice(), &[-1.0, 0.0, 1.0, 0.0]);
    }

    proptest! {
        #[test]
        fn csv_round_trip(values in proptest::collection::vec(-1e12f64..1e12, 6..60)) {
            let d = 3;
            let n = values.len() / d;
            let data = DataSet::new(values[..n * d].to_vec(), n, d).unwrap();
            let (back, _) = csv(&data.to_csv(), None).unwrap();
            prop_assert_eq!(back, data);
        }
    }
}
