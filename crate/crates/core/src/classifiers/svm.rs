//! Linear one-vs-rest SVM trained by stochastic subgradient descent on
//! the hinge loss, with a deterministic per-class shuffle.

use std::any::Any;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{Classifier, ClassifierKind, Hyperparams};

/// One weight vector and bias per class; prediction is the argmax of the
/// decision values, ties toward the lower class index.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    classes: Vec<u32>,
    n_cols: usize,
    /// K x P, class-major.
    weights: Vec<f64>,
    biases: Vec<f64>,
}

fn train_one_vs_rest(
    train: &FeatureMatrix,
    target: u32,
    class_index: usize,
    hyper: &Hyperparams,
) -> (Vec<f64>, f64) {
    let p = train.n_cols();
    let n = train.n_rows();
    let lambda = hyper.lambda;
    let mut w = vec![0.0; p];
    let mut b = 0.0;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(
        hyper
            .seed
            .wrapping_add((class_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
    );
    // shifting the schedule by 1/lambda keeps the first steps at unit size
    let t0 = 1.0 / lambda;
    let mut t = 0.0f64;
    for _ in 0..hyper.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1.0;
            let eta = 1.0 / (lambda * (t + t0));
            let row = train.row(i);
            let y = if train.labels()[i] == target {
                1.0
            } else {
                -1.0
            };
            let margin = y * (dot(&w, row) + b);
            let shrink = 1.0 - eta * lambda;
            for wj in &mut w {
                *wj *= shrink;
            }
            if margin < 1.0 {
                for (wj, xj) in w.iter_mut().zip(row) {
                    *wj += eta * y * xj;
                }
                b += eta * y;
            }
        }
    }
    (w, b)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearSvmModel {
    pub fn fit(train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Self> {
        if !(hyper.lambda.is_finite() && hyper.lambda > 0.0) {
            return Err(Error::Hyperparameter(format!(
                "lambda must be positive, got {}",
                hyper.lambda
            )));
        }
        if hyper.epochs < 1 {
            return Err(Error::Hyperparameter("need at least 1 epoch".into()));
        }
        let classes = train.classes();
        let p = train.n_cols();
        // each class trains from its own seeded rng, so per-class work can
        // run in parallel without changing the result
        let per_class: Vec<(Vec<f64>, f64)> = classes
            .par_iter()
            .enumerate()
            .map(|(ci, &target)| train_one_vs_rest(train, target, ci, hyper))
            .collect();
        let mut weights = Vec::with_capacity(classes.len() * p);
        let mut biases = Vec::with_capacity(classes.len());
        for (w, b) in per_class {
            weights.extend_from_slice(&w);
            biases.push(b);
        }
        Ok(Self {
            classes,
            n_cols: p,
            weights,
            biases,
        })
    }

    /// Decision value of class index `ci` for a row.
    pub fn decision_value(&self, ci: usize, row: &[f64]) -> f64 {
        dot(&self.weights[ci * self.n_cols..(ci + 1) * self.n_cols], row) + self.biases[ci]
    }

    pub(crate) fn from_parts(
        classes: Vec<u32>,
        n_cols: usize,
        weights: Vec<f64>,
        biases: Vec<f64>,
    ) -> Result<Self> {
        if weights.len() != classes.len() * n_cols || biases.len() != classes.len() {
            return Err(Error::Shape("svm parameter lengths disagree".into()));
        }
        Ok(Self {
            classes,
            n_cols,
            weights,
            biases,
        })
    }

    pub(crate) fn parts(&self) -> (&[u32], usize, &[f64], &[f64]) {
        (&self.classes, self.n_cols, &self.weights, &self.biases)
    }
}

impl Classifier for LinearSvmModel {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::Svm
    }

    fn classes(&self) -> &[u32] {
        &self.classes
    }

    fn feature_width(&self) -> usize {
        self.n_cols
    }

    fn predict_row(&self, row: &[f64]) -> u32 {
        let mut best = 0usize;
        let mut best_score = f64::NEG_INFINITY;
        for ci in 0..self.classes.len() {
            let score = self.decision_value(ci, row);
            if score > best_score {
                best_score = score;
                best = ci;
            }
        }
        self.classes[best]
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}
