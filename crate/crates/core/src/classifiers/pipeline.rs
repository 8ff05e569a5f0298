//! A trained pipeline: windowing parameters, feature configuration,
//! standardization and one classifier, bound into a single deployable
//! object.

use crate::error::{Error, Result};
use crate::features::{extract, FeatureConfig, FeatureMatrix};
use crate::windowing::{AggregationSpec, Segment, Technique, WindowSpec};

use super::standardize::{apply_standardizer, fit_standardizer, StandardizationParams};
use super::{train, Classifier, ClassifierKind, Hyperparams};

pub struct TrainedPipeline {
    pub technique: Technique,
    pub window_spec: WindowSpec,
    pub aggregation: Option<AggregationSpec>,
    pub feature_config: FeatureConfig,
    pub standardizer: Option<StandardizationParams>,
    pub model: Box<dyn Classifier>,
    pub classes: Vec<u32>,
    pub num_channels: usize,
    pub n_train_rows: usize,
}

impl TrainedPipeline {
    /// Train a classifier on a feature matrix and bind it to the
    /// windowing and feature parameters that produced the matrix.
    ///
    /// `standardize` of `None` picks the per-classifier default (on for
    /// everything but the decision tree).
    #[allow(clippy::too_many_arguments)]
    pub fn fit(
        train_matrix: &FeatureMatrix,
        technique: Technique,
        window_spec: WindowSpec,
        aggregation: Option<AggregationSpec>,
        feature_config: FeatureConfig,
        kind: ClassifierKind,
        hyper: &Hyperparams,
        standardize: Option<bool>,
    ) -> Result<Self> {
        let num_channels = train_matrix.num_channels();
        let expected = feature_config.row_width(num_channels);
        if expected != train_matrix.n_cols() {
            return Err(Error::Shape(format!(
                "feature config {} on {num_channels} channels yields {expected} columns, \
                 but the training matrix has {}",
                feature_config.name,
                train_matrix.n_cols()
            )));
        }
        let standardize = standardize.unwrap_or_else(|| kind.standardize_by_default());
        let (standardizer, model) = if standardize {
            let params = fit_standardizer(train_matrix)?;
            let transformed = apply_standardizer(&params, train_matrix)?;
            (Some(params), train(kind, &transformed, hyper)?)
        } else {
            (None, train(kind, train_matrix, hyper)?)
        };
        let classes = model.classes().to_vec();
        Ok(Self {
            technique,
            window_spec,
            aggregation,
            feature_config,
            standardizer,
            model,
            classes,
            num_channels,
            n_train_rows: train_matrix.n_rows(),
        })
    }

    /// Predict every row of a feature matrix.
    pub fn predict_matrix(&self, matrix: &FeatureMatrix) -> Result<Vec<u32>> {
        match &self.standardizer {
            Some(params) => self.model.predict(&apply_standardizer(params, matrix)?),
            None => self.model.predict(matrix),
        }
    }

    /// Predict from one raw feature row.
    pub fn predict_row(&self, row: &[f64]) -> Result<u32> {
        if row.len() != self.model.feature_width() {
            return Err(Error::Shape(format!(
                "row has {} values but the model expects {}",
                row.len(),
                self.model.feature_width()
            )));
        }
        match &self.standardizer {
            Some(params) => {
                let mut buf = row.to_vec();
                params.transform_row_in_place(&mut buf);
                Ok(self.model.predict_row(&buf))
            }
            None => Ok(self.model.predict_row(row)),
        }
    }

    /// Featurize one segment and predict its label.
    pub fn predict_segment(&self, segment: &Segment) -> Result<u32> {
        let row = extract(segment, &self.feature_config)?;
        self.predict_row(&row)
    }
}
