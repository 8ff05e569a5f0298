//! The `presets` listing: techniques, feature configurations and
//! classifier defaults.

use emgpr_core::classifiers::{ClassifierKind, Hyperparams};
use emgpr_core::features::FeatureConfig;
use emgpr_core::windowing::{make_baseline_spec, Technique};

pub fn render_presets() -> String {
    let mut out = String::new();
    let h = Hyperparams::default();

    out.push_str("techniques:\n");
    for technique in Technique::ALL {
        let (window, agg) = make_baseline_spec(technique, 2000.0).expect("presets are valid");
        let agg_text = match agg {
            Some(a) => format!("mean of {} consecutive windows", a.n),
            None => "no aggregation".to_string(),
        };
        out.push_str(&format!(
            "  {:<9} {} ms window, {} ms increment, {}, {}\n",
            technique.name(),
            window.length_ms,
            window.increment_ms,
            window.mode.name(),
            agg_text
        ));
    }

    out.push_str("feature configurations:\n");
    for name in FeatureConfig::PRESET_NAMES {
        let config = FeatureConfig::preset(name).expect("preset names are valid");
        let kinds: Vec<&str> = config.kinds().iter().map(|k| k.upper_name()).collect();
        out.push_str(&format!(
            "  {}: {}  ({} columns on 12 channels)\n",
            name,
            kinds.join(" "),
            config.row_width(12)
        ));
    }

    out.push_str("classifiers:\n");
    for kind in ClassifierKind::ALL {
        let detail = match kind {
            ClassifierKind::Knn => format!("k-nearest neighbors (k={}, Euclidean)", h.k),
            ClassifierKind::NaiveBayes => format!(
                "Gaussian naive Bayes (variance smoothing {} relative)",
                h.var_smoothing
            ),
            ClassifierKind::DecisionTree => format!(
                "CART decision tree (Gini, max depth {}, min leaf {})",
                h.max_depth, h.min_samples_leaf
            ),
            ClassifierKind::Svm => format!(
                "linear one-vs-rest SVM (hinge-loss SGD, lambda={}, {} epochs)",
                h.lambda, h.epochs
            ),
        };
        let std_note = if kind.standardize_by_default() {
            "standardized"
        } else {
            "unstandardized"
        };
        out.push_str(&format!("  {:<4} {detail}, {std_note}\n", kind.name()));
    }
    out
}
