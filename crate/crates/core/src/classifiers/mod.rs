//! From-scratch classifiers behind one train/predict contract.
//!
//! Each algorithm implements [`Classifier`] and is registered by name in
//! [`trainers`], so callers select a variant at runtime (`knn`, `nb`,
//! `dt`, `svm`) without knowing the concrete type. Training is
//! deterministic for a fixed seed; trained models are immutable and their
//! predictions are pure.

mod decision_tree;
mod knn;
mod naive_bayes;
pub mod persist;
mod pipeline;
mod standardize;
mod svm;

use std::any::Any;

use rayon::prelude::*;

pub use decision_tree::DecisionTreeModel;
pub use knn::KnnModel;
pub use naive_bayes::GaussianNbModel;
pub use pipeline::TrainedPipeline;
pub use standardize::{apply_standardizer, fit_standardizer, StandardizationParams};
pub use svm::LinearSvmModel;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// The four classifier families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Knn,
    NaiveBayes,
    DecisionTree,
    Svm,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] = [
        ClassifierKind::Knn,
        ClassifierKind::NaiveBayes,
        ClassifierKind::DecisionTree,
        ClassifierKind::Svm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::Knn => "knn",
            ClassifierKind::NaiveBayes => "nb",
            ClassifierKind::DecisionTree => "dt",
            ClassifierKind::Svm => "svm",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "knn" => Some(ClassifierKind::Knn),
            "nb" => Some(ClassifierKind::NaiveBayes),
            "dt" => Some(ClassifierKind::DecisionTree),
            "svm" => Some(ClassifierKind::Svm),
            _ => None,
        }
    }

    /// Whether feature standardization is on by default for this model.
    /// Decision trees split on value order alone, so they skip it.
    pub fn standardize_by_default(self) -> bool {
        self != ClassifierKind::DecisionTree
    }
}

/// Hyperparameters for all classifier families. Each trainer reads only
/// the fields it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparams {
    /// kNN: number of neighbors.
    pub k: usize,
    /// NB: variance smoothing, relative to the largest feature variance.
    pub var_smoothing: f64,
    /// DT: maximum tree depth.
    pub max_depth: usize,
    /// DT: minimum rows per leaf.
    pub min_samples_leaf: usize,
    /// SVM: L2 regularization strength.
    pub lambda: f64,
    /// SVM: passes over the training data.
    pub epochs: usize,
    /// SVM: seed of the deterministic shuffle.
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Self {
            k: 5,
            var_smoothing: 1e-9,
            max_depth: 20,
            min_samples_leaf: 1,
            lambda: 1e-4,
            epochs: 10,
            seed: 0,
        }
    }
}

/// A trained model: immutable, safe to share, pure predictions.
pub trait Classifier: Send + Sync {
    fn kind(&self) -> ClassifierKind;

    /// Sorted distinct labels seen at training time.
    fn classes(&self) -> &[u32];

    /// Expected row width.
    fn feature_width(&self) -> usize;

    /// Predict a single row. The row width must equal
    /// [`Classifier::feature_width`]; batch entry points check it.
    fn predict_row(&self, row: &[f64]) -> u32;

    /// Predict every row of a matrix.
    fn predict(&self, matrix: &FeatureMatrix) -> Result<Vec<u32>> {
        if matrix.n_cols() != self.feature_width() {
            return Err(Error::Shape(format!(
                "matrix has {} columns but the model expects {}",
                matrix.n_cols(),
                self.feature_width()
            )));
        }
        Ok((0..matrix.n_rows())
            .into_par_iter()
            .map(|i| self.predict_row(matrix.row(i)))
            .collect())
    }

    /// Concrete-type access for persistence.
    fn as_any(&self) -> &dyn Any;
}

/// One entry of the strategy registry: trains a model from a feature
/// matrix and hyperparameters.
pub trait ClassifierTrainer: Send + Sync {
    fn kind(&self) -> ClassifierKind;
    fn train(&self, train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Box<dyn Classifier>>;
}

struct KnnTrainer;
struct NbTrainer;
struct DtTrainer;
struct SvmTrainer;

impl ClassifierTrainer for KnnTrainer {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::Knn
    }
    fn train(&self, train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Box<dyn Classifier>> {
        Ok(Box::new(KnnModel::fit(train, hyper)?))
    }
}

impl ClassifierTrainer for NbTrainer {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::NaiveBayes
    }
    fn train(&self, train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Box<dyn Classifier>> {
        Ok(Box::new(GaussianNbModel::fit(train, hyper)?))
    }
}

impl ClassifierTrainer for DtTrainer {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::DecisionTree
    }
    fn train(&self, train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Box<dyn Classifier>> {
        Ok(Box::new(DecisionTreeModel::fit(train, hyper)?))
    }
}

impl ClassifierTrainer for SvmTrainer {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::Svm
    }
    fn train(&self, train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Box<dyn Classifier>> {
        Ok(Box::new(LinearSvmModel::fit(train, hyper)?))
    }
}

static REGISTRY: [&dyn ClassifierTrainer; 4] = [&KnnTrainer, &NbTrainer, &DtTrainer, &SvmTrainer];

/// All registered trainers, in registration order.
pub fn trainers() -> &'static [&'static dyn ClassifierTrainer] {
    &REGISTRY
}

pub fn trainer_for(kind: ClassifierKind) -> &'static dyn ClassifierTrainer {
    REGISTRY
        .iter()
        .copied()
        .find(|t| t.kind() == kind)
        .expect("every kind is registered")
}

pub fn trainer_by_name(name: &str) -> Option<&'static dyn ClassifierTrainer> {
    ClassifierKind::parse(name).map(trainer_for)
}

/// Shared pre-training checks, then dispatch to the registered trainer.
pub fn train(
    kind: ClassifierKind,
    train: &FeatureMatrix,
    hyper: &Hyperparams,
) -> Result<Box<dyn Classifier>> {
    if train.n_rows() == 0 {
        return Err(Error::EmptyInput("no training rows".into()));
    }
    let classes = train.classes();
    if classes.len() < 2 {
        return Err(Error::DegenerateData(format!(
            "training set has {} class(es); need at least 2",
            classes.len()
        )));
    }
    trainer_for(kind).train(train, hyper)
}

#[cfg(test)]
pub(crate) mod test_util {
    use crate::features::{ColumnMeta, FeatureKind, FeatureMatrix};

    /// Feature matrix from raw rows; generic mav-column provenance.
    pub fn matrix(rows: &[(&[f64], u32)]) -> FeatureMatrix {
        let width = rows[0].0.len();
        let meta: Vec<ColumnMeta> = (0..width)
            .map(|channel| ColumnMeta {
                channel,
                kind: FeatureKind::Mav,
                bin: None,
            })
            .collect();
        let values: Vec<Vec<f64>> = rows.iter().map(|(r, _)| r.to_vec()).collect();
        let labels: Vec<u32> = rows.iter().map(|&(_, l)| l).collect();
        let reps = vec![1; rows.len()];
        FeatureMatrix::from_rows(meta, values, labels, reps, 1).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_util::matrix;
    use super::*;

    fn four_point_set() -> FeatureMatrix {
        matrix(&[(&[0.0], 1), (&[1.0], 1), (&[10.0], 2), (&[11.0], 2)])
    }

    #[test]
    fn registry_covers_all_kinds() {
        assert_eq!(trainers().len(), 4);
        for kind in ClassifierKind::ALL {
            assert_eq!(trainer_for(kind).kind(), kind);
            assert_eq!(trainer_by_name(kind.name()).unwrap().kind(), kind);
        }
        assert!(trainer_by_name("mlp").is_none());
    }

    #[test]
    fn every_classifier_is_exact_on_the_four_point_set() {
        let data = four_point_set();
        for kind in ClassifierKind::ALL {
            let hyper = Hyperparams {
                k: 1,
                ..Default::default()
            };
            let model = train(kind, &data, &hyper).unwrap();
            let preds = model.predict(&data).unwrap();
            assert_eq!(preds, vec![1, 1, 2, 2], "{}", kind.name());
            assert_eq!(model.classes(), &[1, 2]);
        }
    }

    #[test]
    fn single_class_training_is_degenerate() {
        let data = matrix(&[(&[0.0], 1), (&[1.0], 1)]);
        let err = train(ClassifierKind::Knn, &data, &Hyperparams::default())
            .err()
            .unwrap();
        assert!(matches!(err, Error::DegenerateData(_)));
    }

    #[test]
    fn predict_rejects_wrong_width() {
        let data = four_point_set();
        let model = train(ClassifierKind::NaiveBayes, &data, &Hyperparams::default()).unwrap();
        let wide = matrix(&[(&[0.0, 1.0], 1), (&[1.0, 0.0], 2)]);
        assert!(matches!(model.predict(&wide), Err(Error::Shape(_))));
    }
}
