//! Gaussian naive Bayes with log-density scoring.

use std::any::Any;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{Classifier, ClassifierKind, Hyperparams};

const LN_TAU: f64 = 1.8378770664093453; // ln(2*pi)

/// Class priors plus per-class per-feature mean and smoothed variance.
/// Scores are sums of log densities; ties go to the lower class index.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNbModel {
    classes: Vec<u32>,
    n_cols: usize,
    priors: Vec<f64>,
    /// K x P, class-major.
    means: Vec<f64>,
    /// K x P, class-major, strictly positive after smoothing.
    variances: Vec<f64>,
}

impl GaussianNbModel {
    pub fn fit(train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Self> {
        if !(hyper.var_smoothing.is_finite() && hyper.var_smoothing >= 0.0) {
            return Err(Error::Hyperparameter(format!(
                "variance smoothing must be nonnegative, got {}",
                hyper.var_smoothing
            )));
        }
        let classes = train.classes();
        let k = classes.len();
        let p = train.n_cols();
        let n = train.n_rows();
        let class_index = |label: u32| classes.binary_search(&label).expect("label was collected");

        let mut counts = vec![0usize; k];
        let mut means = vec![0.0; k * p];
        for i in 0..n {
            let ci = class_index(train.labels()[i]);
            counts[ci] += 1;
            for (m, v) in means[ci * p..(ci + 1) * p].iter_mut().zip(train.row(i)) {
                *m += v;
            }
        }
        for (ci, &count) in counts.iter().enumerate() {
            for m in &mut means[ci * p..(ci + 1) * p] {
                *m /= count as f64;
            }
        }
        let mut variances = vec![0.0; k * p];
        for i in 0..n {
            let ci = class_index(train.labels()[i]);
            for (j, v) in train.row(i).iter().enumerate() {
                let d = v - means[ci * p + j];
                variances[ci * p + j] += d * d;
            }
        }
        for (ci, &count) in counts.iter().enumerate() {
            for v in &mut variances[ci * p..(ci + 1) * p] {
                *v /= count as f64;
            }
        }

        // smoothing is relative to the largest overall feature variance
        let mut col_mean = vec![0.0; p];
        for i in 0..n {
            for (m, v) in col_mean.iter_mut().zip(train.row(i)) {
                *m += v;
            }
        }
        for m in &mut col_mean {
            *m /= n as f64;
        }
        let mut col_var = vec![0.0; p];
        for i in 0..n {
            for ((acc, v), mean) in col_var.iter_mut().zip(train.row(i)).zip(&col_mean) {
                let d = v - mean;
                *acc += d * d;
            }
        }
        let max_var = col_var.iter().fold(0.0f64, |m, &v| m.max(v / n as f64));
        let mut smoothing = hyper.var_smoothing * max_var;
        if smoothing <= 0.0 {
            smoothing = 1e-12;
        }
        for v in &mut variances {
            *v += smoothing;
        }

        let priors: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        Ok(Self {
            classes,
            n_cols: p,
            priors,
            means,
            variances,
        })
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub(crate) fn from_parts(
        classes: Vec<u32>,
        n_cols: usize,
        priors: Vec<f64>,
        means: Vec<f64>,
        variances: Vec<f64>,
    ) -> Result<Self> {
        let k = classes.len();
        if priors.len() != k || means.len() != k * n_cols || variances.len() != k * n_cols {
            return Err(Error::Shape(
                "naive Bayes parameter lengths disagree".into(),
            ));
        }
        if variances.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(Error::InvalidSpec {
                what: "naive Bayes model",
                reason: "variances must be positive".into(),
            });
        }
        Ok(Self {
            classes,
            n_cols,
            priors,
            means,
            variances,
        })
    }

    pub(crate) fn parts(&self) -> (&[u32], usize, &[f64], &[f64], &[f64]) {
        (
            &self.classes,
            self.n_cols,
            &self.priors,
            &self.means,
            &self.variances,
        )
    }
}

impl Classifier for GaussianNbModel {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::NaiveBayes
    }

    fn classes(&self) -> &[u32] {
        &self.classes
    }

    fn feature_width(&self) -> usize {
        self.n_cols
    }

    fn predict_row(&self, row: &[f64]) -> u32 {
        let p = self.n_cols;
        let mut best = 0usize;
        let mut best_score = f64::NEG_INFINITY;
        for (ci, &prior) in self.priors.iter().enumerate() {
            let mut score = prior.ln();
            let means = &self.means[ci * p..(ci + 1) * p];
            let vars = &self.variances[ci * p..(ci + 1) * p];
            for j in 0..p {
                let d = row[j] - means[j];
                score -= 0.5 * (LN_TAU + vars[j].ln() + d * d / vars[j]);
            }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::test_util::matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn separated_blobs_train_at_99_percent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut normal = move || {
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random::<f64>();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let mut rows: Vec<(Vec<f64>, u32)> = Vec::new();
        for _ in 0..100 {
            rows.push((vec![-10.0 + normal(), -10.0 + normal()], 1));
        }
        for _ in 0..100 {
            rows.push((vec![10.0 + normal(), 10.0 + normal()], 2));
        }
        let refs: Vec<(&[f64], u32)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let m = matrix(&refs);
        let model = GaussianNbModel::fit(&m, &Hyperparams::default()).unwrap();
        let preds = model.predict(&m).unwrap();
        let correct = preds.iter().zip(m.labels()).filter(|(a, b)| a == b).count();
        assert!(correct >= 198, "only {correct}/200 correct");
        let prior_sum: f64 = model.priors().iter().sum();
        assert!((prior_sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn midpoint_tie_goes_to_lower_class_index() {
        // symmetric classes, equal priors; the query sits exactly between
        let m = matrix(&[(&[-3.0], 1), (&[-1.0], 1), (&[1.0], 2), (&[3.0], 2)]);
        let model = GaussianNbModel::fit(&m, &Hyperparams::default()).unwrap();
        assert_eq!(model.predict_row(&[0.0]), 1);
    }

    #[test]
    fn constant_features_survive_smoothing() {
        let m = matrix(&[(&[1.0, 0.0], 1), (&[1.0, 0.0], 1), (&[1.0, 5.0], 2)]);
        let model = GaussianNbModel::fit(&m, &Hyperparams::default()).unwrap();
        let preds = model.predict(&m).unwrap();
        assert_eq!(preds.len(), 3);
        assert!(preds.iter().all(|p| *p == 1 || *p == 2));
    }
}
