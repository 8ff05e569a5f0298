//! k-nearest-neighbor classifier with Euclidean distance.

use std::any::Any;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{Classifier, ClassifierKind, Hyperparams};

/// Above this many distance terms a single query scans the training rows
/// in parallel chunks.
const PAR_ELEMENTS: usize = 1 << 22;

/// Squared Euclidean distance with four independent accumulators so the
/// loop vectorizes. The summation order is fixed, so results are
/// identical across runs.
fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for i in 0..chunks {
        let j = i * 4;
        let d0 = a[j] - b[j];
        let d1 = a[j + 1] - b[j + 1];
        let d2 = a[j + 2] - b[j + 2];
        let d3 = a[j + 3] - b[j + 3];
        acc[0] += d0 * d0;
        acc[1] += d1 * d1;
        acc[2] += d2 * d2;
        acc[3] += d3 * d3;
    }
    let mut sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for j in chunks * 4..a.len() {
        let d = a[j] - b[j];
        sum += d * d;
    }
    sum
}

/// Training-set storage plus `k`. Ties in the vote go to the class of the
/// nearest tied neighbor; equal distances order by row index.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    k: usize,
    classes: Vec<u32>,
    n_cols: usize,
    rows: Vec<f64>,
    labels: Vec<u32>,
}

impl KnnModel {
    pub fn fit(train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Self> {
        if hyper.k < 1 {
            return Err(Error::Hyperparameter("k must be at least 1".into()));
        }
        if hyper.k > train.n_rows() {
            return Err(Error::Hyperparameter(format!(
                "k = {} exceeds the {} training rows",
                hyper.k,
                train.n_rows()
            )));
        }
        Ok(Self {
            k: hyper.k,
            classes: train.classes(),
            n_cols: train.n_cols(),
            rows: train.values().to_vec(),
            labels: train.labels().to_vec(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn from_parts(
        k: usize,
        classes: Vec<u32>,
        n_cols: usize,
        rows: Vec<f64>,
        labels: Vec<u32>,
    ) -> Result<Self> {
        if n_cols == 0 || rows.len() != labels.len() * n_cols {
            return Err(Error::Shape(format!(
                "{} values do not form {} rows of width {n_cols}",
                rows.len(),
                labels.len()
            )));
        }
        if k < 1 || k > labels.len() {
            return Err(Error::Hyperparameter(format!(
                "k = {k} invalid for {} rows",
                labels.len()
            )));
        }
        Ok(Self {
            k,
            classes,
            n_cols,
            rows,
            labels,
        })
    }

    pub(crate) fn parts(&self) -> (usize, &[u32], usize, &[f64], &[u32]) {
        (self.k, &self.classes, self.n_cols, &self.rows, &self.labels)
    }

    fn distances_in(&self, query: &[f64], range: std::ops::Range<usize>) -> Vec<(f64, usize)> {
        range
            .map(|i| {
                let row = &self.rows[i * self.n_cols..(i + 1) * self.n_cols];
                (squared_distance(row, query), i)
            })
            .collect()
    }

    /// The k training rows nearest to `query`, ordered by (distance, row
    /// index). The total order makes the result independent of any
    /// chunking of the scan.
    fn nearest(&self, query: &[f64]) -> Vec<(f64, usize)> {
        let n = self.n_rows();
        let take_k = |mut dists: Vec<(f64, usize)>| {
            dists.sort_unstable_by(|a, b| a.partial_cmp(b).expect("distances are finite"));
            dists.truncate(self.k);
            dists
        };
        if n * self.n_cols >= PAR_ELEMENTS {
            let chunk = 4096;
            let starts: Vec<usize> = (0..n).step_by(chunk).collect();
            let candidates: Vec<(f64, usize)> = starts
                .par_iter()
                .flat_map_iter(|&s| take_k(self.distances_in(query, s..(s + chunk).min(n))))
                .collect();
            take_k(candidates)
        } else {
            take_k(self.distances_in(query, 0..n))
        }
    }
}

impl Classifier for KnnModel {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::Knn
    }

    fn classes(&self) -> &[u32] {
        &self.classes
    }

    fn feature_width(&self) -> usize {
        self.n_cols
    }

    fn predict_row(&self, row: &[f64]) -> u32 {
        let neighbors = self.nearest(row);
        let mut votes: BTreeMap<u32, usize> = BTreeMap::new();
        for &(_, i) in &neighbors {
            *votes.entry(self.labels[i]).or_insert(0) += 1;
        }
        let max_votes = votes.values().copied().max().expect("k >= 1");
        // among tied classes, the one owning the nearest neighbor wins
        neighbors
            .iter()
            .map(|&(_, i)| self.labels[i])
            .find(|label| votes[label] == max_votes)
            .expect("some neighbor holds the max vote")
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}
