//! Single-file pipeline persistence.
//!
//! The format is line-oriented text with a versioned header. Every float
//! is written in its shortest round-trip decimal form, so a saved and
//! reloaded pipeline reproduces its predictions exactly.
//!
//! ```text
//! emgpr-pipeline v1
//! technique PROPOSED
//! window.length_ms 256
//! window.increment_ms 10
//! window.mode overlapped
//! window.label_policy majority
//! window.latency_limit_ms 300      # or `none`
//! aggregation none                 # or the group size
//! features.name C1
//! features.kinds mav mavs wl ssc zc hist rms
//! features.zc_threshold 0
//! features.ssc_threshold 0
//! features.hist_bins 20
//! features.hist_sigma_span 3
//! channels 12
//! n_train 400
//! classes 1 2 ... 17
//! standardizer <epsilon>           # or `none`; then `means` and `stds` lines
//! model <knn|nb|dt|svm>
//! <model-specific lines>
//! end
//! ```
//!
//! Model sections: `knn` stores `knn.k`, `knn.dims R P`, `knn.labels`,
//! then one `knn.row` line per stored training row. `nb` stores
//! `nb.dims K P`, `nb.priors`, then one `nb.mean` and one `nb.var` line
//! per class. `dt` stores `dt.nodes N` then one `dt.node` line per node,
//! either `leaf <label>` or `split <feature> <threshold> <left> <right>`.
//! `svm` stores `svm.dims K P` then one `svm.class <bias> <weights...>`
//! line per class.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::features::{FeatureConfig, FeatureKind, FeatureParams};
use crate::windowing::{AggregationSpec, LabelPolicy, Technique, WindowMode, WindowSpec};

use super::decision_tree::Node;
use super::standardize::StandardizationParams;
use super::{
    Classifier, DecisionTreeModel, GaussianNbModel, KnnModel, LinearSvmModel, TrainedPipeline,
};

const MAGIC: &str = "emgpr-pipeline v1";

pub fn save_pipeline(pipeline: &TrainedPipeline, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_pipeline(pipeline, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_pipeline(p: &TrainedPipeline, w: &mut impl Write) -> Result<()> {
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "technique {}", p.technique.name())?;
    writeln!(w, "window.length_ms {}", p.window_spec.length_ms)?;
    writeln!(w, "window.increment_ms {}", p.window_spec.increment_ms)?;
    writeln!(w, "window.mode {}", p.window_spec.mode.name())?;
    writeln!(
        w,
        "window.label_policy {}",
        p.window_spec.label_policy.name()
    )?;
    match p.window_spec.latency_limit_ms {
        Some(limit) => writeln!(w, "window.latency_limit_ms {limit}")?,
        None => writeln!(w, "window.latency_limit_ms none")?,
    }
    match &p.aggregation {
        Some(agg) => writeln!(w, "aggregation {}", agg.n)?,
        None => writeln!(w, "aggregation none")?,
    }
    writeln!(w, "features.name {}", p.feature_config.name)?;
    let kinds: Vec<&str> = p.feature_config.kinds().iter().map(|k| k.name()).collect();
    writeln!(w, "features.kinds {}", kinds.join(" "))?;
    writeln!(
        w,
        "features.zc_threshold {}",
        p.feature_config.params.zc_threshold
    )?;
    writeln!(
        w,
        "features.ssc_threshold {}",
        p.feature_config.params.ssc_threshold
    )?;
    writeln!(
        w,
        "features.hist_bins {}",
        p.feature_config.params.hist_bins
    )?;
    writeln!(
        w,
        "features.hist_sigma_span {}",
        p.feature_config.params.hist_sigma_span
    )?;
    writeln!(w, "channels {}", p.num_channels)?;
    writeln!(w, "n_train {}", p.n_train_rows)?;
    writeln!(w, "classes {}", join(&p.classes))?;
    match &p.standardizer {
        Some(s) => {
            writeln!(w, "standardizer {}", s.epsilon())?;
            writeln!(w, "means {}", join(s.means()))?;
            writeln!(w, "stds {}", join(s.stds()))?;
        }
        None => writeln!(w, "standardizer none")?,
    }
    writeln!(w, "model {}", p.model.kind().name())?;
    write_model(p.model.as_ref(), w)?;
    writeln!(w, "end")?;
    Ok(())
}

fn write_model(model: &dyn Classifier, w: &mut impl Write) -> Result<()> {
    match model.kind() {
        super::ClassifierKind::Knn => {
            let knn = model
                .as_any()
                .downcast_ref::<KnnModel>()
                .expect("kind tag matches type");
            let (k, _, n_cols, rows, labels) = knn.parts();
            writeln!(w, "knn.k {k}")?;
            writeln!(w, "knn.dims {} {}", labels.len(), n_cols)?;
            writeln!(w, "knn.labels {}", join(labels))?;
            for row in rows.chunks(n_cols) {
                writeln!(w, "knn.row {}", join(row))?;
            }
        }
        super::ClassifierKind::NaiveBayes => {
            let nb = model
                .as_any()
                .downcast_ref::<GaussianNbModel>()
                .expect("kind tag matches type");
            let (classes, n_cols, priors, means, vars) = nb.parts();
            writeln!(w, "nb.dims {} {}", classes.len(), n_cols)?;
            writeln!(w, "nb.priors {}", join(priors))?;
            for mean in means.chunks(n_cols) {
                writeln!(w, "nb.mean {}", join(mean))?;
            }
            for var in vars.chunks(n_cols) {
                writeln!(w, "nb.var {}", join(var))?;
            }
        }
        super::ClassifierKind::DecisionTree => {
            let dt = model
                .as_any()
                .downcast_ref::<DecisionTreeModel>()
                .expect("kind tag matches type");
            let (_, _, nodes) = dt.parts();
            writeln!(w, "dt.nodes {}", nodes.len())?;
            for node in nodes {
                match node {
                    Node::Leaf { label } => writeln!(w, "dt.node leaf {label}")?,
                    Node::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    } => writeln!(w, "dt.node split {feature} {threshold} {left} {right}")?,
                }
            }
        }
        super::ClassifierKind::Svm => {
            let svm = model
                .as_any()
                .downcast_ref::<LinearSvmModel>()
                .expect("kind tag matches type");
            let (classes, n_cols, weights, biases) = svm.parts();
            writeln!(w, "svm.dims {} {}", classes.len(), n_cols)?;
            for (ci, bias) in biases.iter().enumerate() {
                writeln!(
                    w,
                    "svm.class {bias} {}",
                    join(&weights[ci * n_cols..(ci + 1) * n_cols])
                )?;
            }
        }
    }
    Ok(())
}

fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn load_pipeline(path: impl AsRef<Path>) -> Result<TrainedPipeline> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    read_pipeline(BufReader::new(file))
}

struct Lines<R: BufRead> {
    inner: std::io::Lines<R>,
    line_no: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<String> {
        self.line_no += 1;
        match self.inner.next() {
            Some(line) => Ok(line?),
            None => Err(Error::ModelFormat(format!(
                "unexpected end of file at line {}",
                self.line_no
            ))),
        }
    }

    /// Read a `key value...` line, checking the key.
    fn expect(&mut self, key: &str) -> Result<String> {
        let line = self.next_line()?;
        match line.strip_prefix(key) {
            Some("") => Ok(String::new()),
            Some(rest) if rest.starts_with(' ') => Ok(rest[1..].to_string()),
            _ => Err(Error::ModelFormat(format!(
                "line {}: expected `{key}`, got `{line}`",
                self.line_no
            ))),
        }
    }

    fn bad(&self, what: &str) -> Error {
        Error::ModelFormat(format!("line {}: invalid {what}", self.line_no))
    }
}

fn parse_vec<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

pub fn read_pipeline(reader: impl BufRead) -> Result<TrainedPipeline> {
    let mut lines = Lines {
        inner: reader.lines(),
        line_no: 0,
    };
    let magic = lines.next_line()?;
    if magic != MAGIC {
        return Err(Error::ModelFormat(format!(
            "not a pipeline file (header `{magic}`)"
        )));
    }
    let technique =
        Technique::parse(&lines.expect("technique")?).ok_or_else(|| lines.bad("technique"))?;
    let length_ms: f64 = lines
        .expect("window.length_ms")?
        .parse()
        .map_err(|_| lines.bad("window length"))?;
    let increment_ms: f64 = lines
        .expect("window.increment_ms")?
        .parse()
        .map_err(|_| lines.bad("window increment"))?;
    let mode =
        WindowMode::parse(&lines.expect("window.mode")?).ok_or_else(|| lines.bad("window mode"))?;
    let label_policy = LabelPolicy::parse(&lines.expect("window.label_policy")?)
        .ok_or_else(|| lines.bad("label policy"))?;
    let limit_raw = lines.expect("window.latency_limit_ms")?;
    let latency_limit_ms = if limit_raw == "none" {
        None
    } else {
        Some(limit_raw.parse().map_err(|_| lines.bad("latency limit"))?)
    };
    let agg_raw = lines.expect("aggregation")?;
    let aggregation = if agg_raw == "none" {
        None
    } else {
        Some(AggregationSpec {
            n: agg_raw.parse().map_err(|_| lines.bad("aggregation"))?,
        })
    };
    let config_name = lines.expect("features.name")?;
    let kinds: Vec<FeatureKind> = lines
        .expect("features.kinds")?
        .split_whitespace()
        .map(FeatureKind::parse)
        .collect::<Option<_>>()
        .ok_or_else(|| lines.bad("feature kinds"))?;
    let zc_threshold: f64 = lines
        .expect("features.zc_threshold")?
        .parse()
        .map_err(|_| lines.bad("zc threshold"))?;
    let ssc_threshold: f64 = lines
        .expect("features.ssc_threshold")?
        .parse()
        .map_err(|_| lines.bad("ssc threshold"))?;
    let hist_bins: usize = lines
        .expect("features.hist_bins")?
        .parse()
        .map_err(|_| lines.bad("histogram bins"))?;
    let hist_sigma_span: f64 = lines
        .expect("features.hist_sigma_span")?
        .parse()
        .map_err(|_| lines.bad("histogram span"))?;
    let num_channels: usize = lines
        .expect("channels")?
        .parse()
        .map_err(|_| lines.bad("channel count"))?;
    let n_train_rows: usize = lines
        .expect("n_train")?
        .parse()
        .map_err(|_| lines.bad("training row count"))?;
    let classes: Vec<u32> =
        parse_vec(&lines.expect("classes")?).ok_or_else(|| lines.bad("class list"))?;

    let std_raw = lines.expect("standardizer")?;
    let standardizer = if std_raw == "none" {
        None
    } else {
        let epsilon: f64 = std_raw.parse().map_err(|_| lines.bad("epsilon"))?;
        let means: Vec<f64> =
            parse_vec(&lines.expect("means")?).ok_or_else(|| lines.bad("means"))?;
        let stds: Vec<f64> = parse_vec(&lines.expect("stds")?).ok_or_else(|| lines.bad("stds"))?;
        Some(StandardizationParams::from_raw(means, stds, epsilon)?)
    };

    let model_kind = lines.expect("model")?;
    let model: Box<dyn Classifier> = match model_kind.as_str() {
        "knn" => {
            let k: usize = lines.expect("knn.k")?.parse().map_err(|_| lines.bad("k"))?;
            let dims: Vec<usize> =
                parse_vec(&lines.expect("knn.dims")?).ok_or_else(|| lines.bad("dims"))?;
            let [n_rows, n_cols] = dims[..] else {
                return Err(lines.bad("dims"));
            };
            let labels: Vec<u32> =
                parse_vec(&lines.expect("knn.labels")?).ok_or_else(|| lines.bad("labels"))?;
            if labels.len() != n_rows {
                return Err(lines.bad("label count"));
            }
            let mut rows = Vec::with_capacity(n_rows * n_cols);
            for _ in 0..n_rows {
                let row: Vec<f64> =
                    parse_vec(&lines.expect("knn.row")?).ok_or_else(|| lines.bad("row"))?;
                if row.len() != n_cols {
                    return Err(lines.bad("row width"));
                }
                rows.extend_from_slice(&row);
            }
            Box::new(KnnModel::from_parts(
                k,
                classes.clone(),
                n_cols,
                rows,
                labels,
            )?)
        }
        "nb" => {
            let dims: Vec<usize> =
                parse_vec(&lines.expect("nb.dims")?).ok_or_else(|| lines.bad("dims"))?;
            let [k, n_cols] = dims[..] else {
                return Err(lines.bad("dims"));
            };
            let priors: Vec<f64> =
                parse_vec(&lines.expect("nb.priors")?).ok_or_else(|| lines.bad("priors"))?;
            let mut means = Vec::with_capacity(k * n_cols);
            for _ in 0..k {
                let m: Vec<f64> =
                    parse_vec(&lines.expect("nb.mean")?).ok_or_else(|| lines.bad("means"))?;
                means.extend_from_slice(&m);
            }
            let mut vars = Vec::with_capacity(k * n_cols);
            for _ in 0..k {
                let v: Vec<f64> =
                    parse_vec(&lines.expect("nb.var")?).ok_or_else(|| lines.bad("variances"))?;
                vars.extend_from_slice(&v);
            }
            Box::new(GaussianNbModel::from_parts(
                classes.clone(),
                n_cols,
                priors,
                means,
                vars,
            )?)
        }
        "dt" => {
            let n_nodes: usize = lines
                .expect("dt.nodes")?
                .parse()
                .map_err(|_| lines.bad("node count"))?;
            let mut nodes = Vec::with_capacity(n_nodes);
            for _ in 0..n_nodes {
                let line = lines.expect("dt.node")?;
                let tokens: Vec<&str> = line.split_whitespace().collect();
                let node = match tokens.as_slice() {
                    ["leaf", label] => Node::Leaf {
                        label: label.parse().map_err(|_| lines.bad("leaf label"))?,
                    },
                    ["split", feature, threshold, left, right] => Node::Split {
                        feature: feature.parse().map_err(|_| lines.bad("split feature"))?,
                        threshold: threshold
                            .parse()
                            .map_err(|_| lines.bad("split threshold"))?,
                        left: left.parse().map_err(|_| lines.bad("split child"))?,
                        right: right.parse().map_err(|_| lines.bad("split child"))?,
                    },
                    _ => return Err(lines.bad("node")),
                };
                nodes.push(node);
            }
            let width = FeatureConfig::new(
                config_name.clone(),
                &kinds,
                FeatureParams {
                    zc_threshold,
                    ssc_threshold,
                    hist_bins,
                    hist_sigma_span,
                },
            )?
            .row_width(num_channels);
            Box::new(DecisionTreeModel::from_parts(
                classes.clone(),
                width,
                nodes,
            )?)
        }
        "svm" => {
            let dims: Vec<usize> =
                parse_vec(&lines.expect("svm.dims")?).ok_or_else(|| lines.bad("dims"))?;
            let [k, n_cols] = dims[..] else {
                return Err(lines.bad("dims"));
            };
            let mut weights = Vec::with_capacity(k * n_cols);
            let mut biases = Vec::with_capacity(k);
            for _ in 0..k {
                let vals: Vec<f64> =
                    parse_vec(&lines.expect("svm.class")?).ok_or_else(|| lines.bad("class row"))?;
                if vals.len() != n_cols + 1 {
                    return Err(lines.bad("class row width"));
                }
                biases.push(vals[0]);
                weights.extend_from_slice(&vals[1..]);
            }
            Box::new(LinearSvmModel::from_parts(
                classes.clone(),
                n_cols,
                weights,
                biases,
            )?)
        }
        other => {
            return Err(Error::ModelFormat(format!("unknown model kind `{other}`")));
        }
    };
    lines.expect("end")?;

    let feature_config = FeatureConfig::new(
        config_name,
        &kinds,
        FeatureParams {
            zc_threshold,
            ssc_threshold,
            hist_bins,
            hist_sigma_span,
        },
    )?;
    let expected_width = feature_config.row_width(num_channels);
    if model.feature_width() != expected_width {
        return Err(Error::ModelFormat(format!(
            "model expects {} features but config {} on {num_channels} channels yields {expected_width}",
            model.feature_width(),
            feature_config.name
        )));
    }
    if let Some(s) = &standardizer {
        if s.width() != model.feature_width() {
            return Err(Error::ModelFormat(format!(
                "standardizer covers {} columns but the model expects {}",
                s.width(),
                model.feature_width()
            )));
        }
    }
    let window_spec = WindowSpec {
        length_ms,
        increment_ms,
        mode,
        label_policy,
        latency_limit_ms,
    };
    Ok(TrainedPipeline {
        technique,
        window_spec,
        aggregation,
        feature_config,
        standardizer,
        model,
        classes,
        num_channels,
        n_train_rows,
    })
}
