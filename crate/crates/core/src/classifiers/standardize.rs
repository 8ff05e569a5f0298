//! Per-column feature standardization fitted on training rows only.

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// Column means and population standard deviations of the training set.
/// Columns whose deviation is at or below `epsilon` carry no information
/// and are mapped to exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationParams {
    means: Vec<f64>,
    stds: Vec<f64>,
    epsilon: f64,
}

pub const DEFAULT_EPSILON: f64 = 1e-12;

impl StandardizationParams {
    pub(crate) fn from_raw(means: Vec<f64>, stds: Vec<f64>, epsilon: f64) -> Result<Self> {
        if means.len() != stds.len() {
            return Err(Error::Shape(format!(
                "{} means vs {} deviations",
                means.len(),
                stds.len()
            )));
        }
        Ok(Self {
            means,
            stds,
            epsilon,
        })
    }

    pub fn width(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Raw (unfloored) population deviations.
    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Deviation of column `j`, floored at epsilon.
    pub fn floored_std(&self, j: usize) -> f64 {
        self.stds[j].max(self.epsilon)
    }

    pub fn transform_row_in_place(&self, row: &mut [f64]) {
        debug_assert_eq!(row.len(), self.means.len());
        for (j, v) in row.iter_mut().enumerate() {
            *v = if self.stds[j] > self.epsilon {
                (*v - self.means[j]) / self.stds[j]
            } else {
                0.0
            };
        }
    }
}

/// Fit standardization parameters on a training matrix.
pub fn fit_standardizer(train: &FeatureMatrix) -> Result<StandardizationParams> {
    if train.n_rows() == 0 {
        return Err(Error::EmptyInput("no rows to fit a standardizer on".into()));
    }
    let n = train.n_rows() as f64;
    let p = train.n_cols();
    let mut means = vec![0.0; p];
    for i in 0..train.n_rows() {
        for (m, v) in means.iter_mut().zip(train.row(i)) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    let mut vars = vec![0.0; p];
    for i in 0..train.n_rows() {
        for (j, v) in train.row(i).iter().enumerate() {
            let d = v - means[j];
            vars[j] += d * d;
        }
    }
    let stds: Vec<f64> = vars.iter().map(|v| (v / n).sqrt()).collect();
    StandardizationParams::from_raw(means, stds, DEFAULT_EPSILON)
}

/// Apply stored parameters to any matrix of the same width. Only the
/// training statistics are used, so there is no test-set leakage.
pub fn apply_standardizer(
    params: &StandardizationParams,
    matrix: &FeatureMatrix,
) -> Result<FeatureMatrix> {
    if matrix.n_cols() != params.width() {
        return Err(Error::Shape(format!(
            "matrix has {} columns but the standardizer expects {}",
            matrix.n_cols(),
            params.width()
        )));
    }
    let p = params.width();
    let mut values = matrix.values().to_vec();
    for row in values.chunks_mut(p) {
        params.transform_row_in_place(row);
    }
    Ok(matrix.with_values(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::test_util::matrix;

    #[test]
    fn standardizes_to_zero_mean_unit_variance() {
        let m = matrix(&[(&[1.0], 1), (&[2.0], 1), (&[3.0], 2)]);
        let params = fit_standardizer(&m).unwrap();
        let t = apply_standardizer(&params, &m).unwrap();
        let expected = (1.0 - 2.0) / (2.0f64 / 3.0).sqrt();
        assert!((t.row(0)[0] - expected).abs() < 1e-12);
        assert!(t.row(1)[0].abs() < 1e-12);
        assert!((t.row(2)[0] + expected).abs() < 1e-12);
        // population variance of the transformed column is 1
        let var: f64 = (0..3).map(|i| t.row(i)[0] * t.row(i)[0]).sum::<f64>() / 3.0;
        assert!((var - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_column_maps_to_exact_zeros() {
        let m = matrix(&[(&[0.1, 5.0], 1), (&[0.1, 6.0], 1), (&[0.1, 7.0], 2)]);
        let params = fit_standardizer(&m).unwrap();
        let t = apply_standardizer(&params, &m).unwrap();
        for i in 0..3 {
            assert_eq!(t.row(i)[0], 0.0);
        }
    }

    #[test]
    fn training_matrix_mean_vanishes() {
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i * 7 % 13) as f64, (i % 5) as f64 - 2.0])
            .collect();
        let refs: Vec<(&[f64], u32)> = rows.iter().map(|r| (r.as_slice(), 1)).collect();
        let m = matrix(&refs);
        let params = fit_standardizer(&m).unwrap();
        let t = apply_standardizer(&params, &m).unwrap();
        for j in 0..2 {
            let mean: f64 = (0..t.n_rows()).map(|i| t.row(i)[j]).sum::<f64>() / t.n_rows() as f64;
            assert!(mean.abs() < 1e-12, "column {j} mean {mean}");
        }
    }

    #[test]
    fn width_mismatch_is_a_shape_error() {
        let m = matrix(&[(&[1.0], 1), (&[2.0], 2)]);
        let params = fit_standardizer(&m).unwrap();
        let wide = matrix(&[(&[1.0, 2.0], 1)]);
        assert!(matches!(
            apply_standardizer(&params, &wide),
            Err(crate::error::Error::Shape(_))
        ));
    }
}
