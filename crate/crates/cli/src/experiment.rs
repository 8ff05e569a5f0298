//! End-to-end experiment execution: ingest or synthesize, window,
//! featurize, split, train, evaluate, report.

use std::fs;
use std::path::{Path, PathBuf};

use emgpr_core::classifiers::{ClassifierKind, Hyperparams, TrainedPipeline};
use emgpr_core::dataset::{
    generate_synthetic, load_recording, split_by_repetition, Recording, SplitSpec, SyntheticSpec,
};
use emgpr_core::error::{Error, Result as CoreResult};
use emgpr_core::evaluation::{
    group_average, write_confusion_csv, write_report_csv, write_summary_csv, EvalReport,
    GroupSummary,
};
use emgpr_core::features::{build_matrix_streaming, FeatureConfig, FeatureMatrix};
use emgpr_core::windowing::{
    make_baseline_spec, segment_iter, AggregateIter, AggregationSpec, Segment, Technique,
    WindowSpec,
};

use crate::{stage, RunResult};

/// Resolved windowing and featurization parameters of one run.
#[derive(Debug, Clone)]
pub struct PipelineSpec {
    pub technique: Technique,
    pub window: WindowSpec,
    pub aggregation: Option<AggregationSpec>,
    pub sliding_aggregation: bool,
    pub include_rest: bool,
    pub config: FeatureConfig,
}

impl PipelineSpec {
    /// Technique defaults with the given feature configuration.
    pub fn for_technique(
        technique: Technique,
        sample_rate_hz: f64,
        config: FeatureConfig,
    ) -> CoreResult<Self> {
        let (window, aggregation) = make_baseline_spec(technique, sample_rate_hz)?;
        Ok(Self {
            technique,
            window,
            aggregation,
            sliding_aggregation: false,
            include_rest: false,
            config,
        })
    }
}

/// Segment, optionally aggregate, filter rest windows, and featurize —
/// streaming, so long recordings never hold every window in memory.
pub fn featurize_recording(rec: &Recording, spec: &PipelineSpec) -> CoreResult<FeatureMatrix> {
    let segments = segment_iter(rec, &spec.window)?;
    let stream: Box<dyn Iterator<Item = CoreResult<Segment>>> = match spec.aggregation {
        Some(agg) => Box::new(AggregateIter::new(
            segments,
            &agg,
            spec.sliding_aggregation,
        )?),
        None => Box::new(segments.map(Ok)),
    };
    let include_rest = spec.include_rest;
    let filtered = stream.filter(move |item| match item {
        Ok(seg) => include_rest || seg.label != 0,
        Err(_) => true,
    });
    build_matrix_streaming(filtered, &spec.config, rec.subject_id)
}

/// Keep only rows whose repetition is in `reps`.
pub fn filter_by_reps(
    matrix: &FeatureMatrix,
    reps: &std::collections::BTreeSet<u32>,
) -> CoreResult<FeatureMatrix> {
    let indices: Vec<usize> = matrix
        .repetitions()
        .iter()
        .enumerate()
        .filter(|(_, r)| reps.contains(r))
        .map(|(i, _)| i)
        .collect();
    if indices.is_empty() {
        return Err(Error::Split(format!(
            "no rows with repetitions {reps:?} in the data"
        )));
    }
    Ok(matrix.select_rows(&indices))
}

/// Where a run's recordings come from.
#[derive(Debug, Clone)]
pub enum InputSource {
    /// One recording CSV per subject.
    Files(Vec<PathBuf>),
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: InputSource,
    /// Subject ids, one per input file; files default to 1..=n.
    pub subject_ids: Vec<u32>,
    pub sample_rate_hz: f64,
    pub expected_channels: Option<usize>,
    pub pipeline: PipelineSpec,
    pub classifier: ClassifierKind,
    pub hyper: Hyperparams,
    /// `None` picks the per-classifier default.
    pub standardize: Option<bool>,
    pub split: SplitSpec,
    pub out_dir: PathBuf,
    pub emit_confusion: bool,
    pub group_size: usize,
}

pub struct RunOutputs {
    pub reports: Vec<EvalReport>,
    pub summary: GroupSummary,
    pub report_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub confusion_csvs: Vec<PathBuf>,
}

/// Output files are written to a staging directory and renamed into
/// place only when the whole run succeeds, so a failed run leaves no
/// partial outputs behind.
struct Staging {
    dir: PathBuf,
    committed: bool,
}

impl Staging {
    fn create(out_dir: &Path) -> std::io::Result<Self> {
        let dir = out_dir.join(format!(".staging-{}", std::process::id()));
        if dir.exists() {
            fs::remove_dir_all(&dir)?;
        }
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            committed: false,
        })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn commit(mut self, out_dir: &Path, names: &[String]) -> std::io::Result<Vec<PathBuf>> {
        let mut finals = Vec::with_capacity(names.len());
        for name in names {
            let target = out_dir.join(name);
            fs::rename(self.dir.join(name), &target)?;
            finals.push(target);
        }
        fs::remove_dir_all(&self.dir)?;
        self.committed = true;
        Ok(finals)
    }
}

impl Drop for Staging {
    fn drop(&mut self) {
        if !self.committed {
            let _ = fs::remove_dir_all(&self.dir);
        }
    }
}

fn load_inputs(config: &RunConfig) -> RunResult<Vec<Recording>> {
    match &config.input {
        InputSource::Synthetic(spec) => {
            let subject = config.subject_ids.first().copied().unwrap_or(1);
            let rec = stage("dataset", generate_synthetic(spec))?.with_subject(subject);
            Ok(vec![rec])
        }
        InputSource::Files(paths) => {
            if paths.len() != config.subject_ids.len() {
                return Err(StageErrorHelper::validation(format!(
                    "{} inputs but {} subject ids",
                    paths.len(),
                    config.subject_ids.len()
                )));
            }
            let mut recs = Vec::with_capacity(paths.len());
            for (path, &subject) in paths.iter().zip(&config.subject_ids) {
                let rec = stage("dataset", load_recording(path, config.expected_channels))?
                    .with_subject(subject);
                let rec = stage("dataset", rec.with_sample_rate(config.sample_rate_hz))?;
                recs.push(rec);
            }
            Ok(recs)
        }
    }
}

struct StageErrorHelper;

impl StageErrorHelper {
    fn validation(reason: String) -> crate::StageError {
        crate::StageError {
            stage: "config",
            source: Error::InvalidSpec {
                what: "run config",
                reason,
            },
        }
    }
}

/// Evaluate one recording under the run's pipeline; returns its report.
fn evaluate_recording(rec: &Recording, config: &RunConfig) -> RunResult<EvalReport> {
    let matrix = stage("features", featurize_recording(rec, &config.pipeline))?;
    let (train_matrix, test_matrix) = stage("split", split_by_repetition(&matrix, &config.split))?;
    let pipeline = stage(
        "train",
        TrainedPipeline::fit(
            &train_matrix,
            config.pipeline.technique,
            config.pipeline.window.clone(),
            config.pipeline.aggregation,
            config.pipeline.config.clone(),
            config.classifier,
            &config.hyper,
            config.standardize,
        ),
    )?;
    let predicted = stage("evaluate", pipeline.predict_matrix(&test_matrix))?;
    stage(
        "evaluate",
        EvalReport::new(
            rec.subject_id,
            config.pipeline.technique.name(),
            config.pipeline.config.name.clone(),
            config.classifier.name(),
            &predicted,
            test_matrix.labels(),
            train_matrix.n_rows(),
        ),
    )
}

/// Run the full experiment deterministically and write the report CSVs.
pub fn run_experiment(config: &RunConfig) -> RunResult<RunOutputs> {
    // claim the output directory before any heavy work
    stage(
        "config",
        fs::create_dir_all(&config.out_dir).map_err(Error::Io),
    )?;
    let staging = stage(
        "config",
        Staging::create(&config.out_dir).map_err(Error::Io),
    )?;

    let recordings = load_inputs(config)?;
    let mut reports = Vec::with_capacity(recordings.len());
    for rec in &recordings {
        reports.push(evaluate_recording(rec, config)?);
    }
    reports.sort_by_key(|r| r.subject_id);
    let summary = stage("report", group_average(&reports, config.group_size))?;
    let mut names = vec!["report.csv".to_string(), "summary.csv".to_string()];
    stage(
        "report",
        write_report_csv(&reports, staging.path("report.csv")),
    )?;
    stage(
        "report",
        write_summary_csv(&summary, staging.path("summary.csv")),
    )?;
    if config.emit_confusion {
        for report in &reports {
            let name = format!("confusion_s{}.csv", report.subject_id);
            stage(
                "report",
                write_confusion_csv(&report.confusion, staging.path(&name)),
            )?;
            names.push(name);
        }
    }
    let finals = stage(
        "report",
        staging.commit(&config.out_dir, &names).map_err(Error::Io),
    )?;
    let report_csv = finals[0].clone();
    let summary_csv = finals[1].clone();
    let confusion_csvs = finals[2..].to_vec();
    Ok(RunOutputs {
        reports,
        summary,
        report_csv,
        summary_csv,
        confusion_csvs,
    })
}
