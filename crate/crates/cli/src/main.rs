//! `emgpr` — surface-EMG movement classification experiments.
//!
//! Exit codes: 0 success, 1 validation error, 2 data error, 3 internal
//! error.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use emgpr_cli::bench::{benchmark_latency, BenchConfig};
use emgpr_cli::config_file::{parse_config_file, FileValues};
use emgpr_cli::experiment::{
    featurize_recording, filter_by_reps, run_experiment, InputSource, PipelineSpec, RunConfig,
};
use emgpr_cli::presets::render_presets;
use emgpr_cli::{exit_code, RunResult, StageError};
use emgpr_core::classifiers::persist::{load_pipeline, save_pipeline};
use emgpr_core::classifiers::{ClassifierKind, Hyperparams, TrainedPipeline};
use emgpr_core::dataset::{
    generate_synthetic, load_recording, write_recording, SplitSpec, SyntheticSpec,
};
use emgpr_core::error::Error;
use emgpr_core::evaluation::{
    group_average, write_confusion_csv, write_report_csv, write_summary_csv, EvalReport,
};
use emgpr_core::features::{
    column_layout, load_feature_csv, write_feature_csv, FeatureConfig, FeatureKind, FeatureParams,
};
use emgpr_core::windowing::{LabelPolicy, Technique, WindowMode, WindowSpec};

#[derive(Parser)]
#[command(
    name = "emgpr",
    version,
    about = "Surface-EMG movement classification: windowing, time-domain features, classifiers, reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a recording CSV and print its stats
    Ingest(IngestArgs),
    /// Generate a deterministic synthetic recording CSV
    Synth(SynthArgs),
    /// Segment a recording and write its feature-matrix CSV
    Featurize(FeaturizeArgs),
    /// Train a classifier from a feature CSV and save the pipeline
    Train(TrainArgs),
    /// Evaluate a saved pipeline on a feature CSV
    Evaluate(EvaluateArgs),
    /// End to end: ingest or synthesize, featurize, split, train, evaluate
    Run(Box<RunArgs>),
    /// Measure median per-window featurize+predict latency
    Bench(BenchArgs),
    /// List techniques, feature configurations and classifier defaults
    Presets,
}

#[derive(Args)]
struct IngestArgs {
    /// Recording CSV to validate
    #[arg(long)]
    input: PathBuf,
    /// Required channel count
    #[arg(long)]
    expected_channels: Option<usize>,
    #[arg(long, default_value_t = 2000.0)]
    rate_hz: f64,
    #[arg(long, default_value_t = 1)]
    subject: u32,
    /// Rewrite the validated recording here in canonical form
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Output recording CSV
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 17)]
    classes: usize,
    #[arg(long, default_value_t = 6)]
    reps: usize,
    /// Movement block duration in seconds
    #[arg(long, default_value_t = 5.0)]
    move_s: f64,
    /// Rest block duration in seconds
    #[arg(long, default_value_t = 3.0)]
    rest_s: f64,
    #[arg(long, default_value_t = 12)]
    channels: usize,
    #[arg(long, default_value_t = 2000.0)]
    rate_hz: f64,
    /// Additive noise level on top of the class amplitude profiles
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct WindowFlags {
    /// Windowing technique: WA, AG or PROPOSED
    #[arg(long, default_value = "PROPOSED")]
    technique: String,
    /// Window length in ms (overrides the technique preset)
    #[arg(long)]
    window_ms: Option<f64>,
    /// Window increment in ms (overrides the technique preset)
    #[arg(long)]
    increment_ms: Option<f64>,
    /// overlapped or adjacent
    #[arg(long)]
    mode: Option<String>,
    /// majority, pure-only or endpoint
    #[arg(long)]
    label_policy: Option<String>,
    /// Aggregation group size (AG defaults to 5)
    #[arg(long)]
    agg_n: Option<usize>,
    /// Aggregate with a sliding mean instead of disjoint groups
    #[arg(long)]
    sliding_aggregation: bool,
    /// Keep rest-labeled windows (stimulus 0)
    #[arg(long)]
    include_rest: bool,
}

#[derive(Args, Clone)]
struct FeatureFlags {
    /// Feature configuration: C1..C7, or a comma list like mav,wl,rms
    #[arg(long, default_value = "C1")]
    config: String,
    #[arg(long, default_value_t = 0.0)]
    zc_threshold: f64,
    #[arg(long, default_value_t = 0.0)]
    ssc_threshold: f64,
    #[arg(long, default_value_t = 20)]
    hist_bins: usize,
    #[arg(long, default_value_t = 3.0)]
    hist_sigma_span: f64,
}

#[derive(Args, Clone)]
struct HyperFlags {
    /// kNN neighbor count
    #[arg(long)]
    k: Option<usize>,
    /// Decision-tree depth limit
    #[arg(long)]
    max_depth: Option<usize>,
    /// Decision-tree minimum rows per leaf
    #[arg(long)]
    min_samples_leaf: Option<usize>,
    /// SVM regularization strength
    #[arg(long)]
    lambda: Option<f64>,
    /// SVM training epochs
    #[arg(long)]
    epochs: Option<usize>,
    /// Naive-Bayes variance smoothing (relative)
    #[arg(long)]
    var_smoothing: Option<f64>,
}

impl HyperFlags {
    fn resolve(&self, seed: u64) -> Hyperparams {
        let d = Hyperparams::default();
        Hyperparams {
            k: self.k.unwrap_or(d.k),
            var_smoothing: self.var_smoothing.unwrap_or(d.var_smoothing),
            max_depth: self.max_depth.unwrap_or(d.max_depth),
            min_samples_leaf: self.min_samples_leaf.unwrap_or(d.min_samples_leaf),
            lambda: self.lambda.unwrap_or(d.lambda),
            epochs: self.epochs.unwrap_or(d.epochs),
            seed,
        }
    }
}

#[derive(Args)]
struct FeaturizeArgs {
    /// Recording CSV to featurize
    #[arg(long)]
    input: PathBuf,
    /// Output feature-matrix CSV
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    expected_channels: Option<usize>,
    #[arg(long, default_value_t = 2000.0)]
    rate_hz: f64,
    #[arg(long, default_value_t = 1)]
    subject: u32,
    #[command(flatten)]
    window: WindowFlags,
    #[command(flatten)]
    features: FeatureFlags,
}

#[derive(Args)]
struct TrainArgs {
    /// Feature-matrix CSV to train on
    #[arg(long)]
    features: PathBuf,
    /// Output pipeline file
    #[arg(long)]
    out: PathBuf,
    /// knn, nb, dt or svm
    #[arg(long, default_value = "knn")]
    classifier: String,
    /// Repetitions used for training
    #[arg(long, default_value = "1,3,4,6")]
    train_reps: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    subject: u32,
    /// auto, on or off
    #[arg(long, default_value = "auto")]
    standardize: String,
    #[arg(long, default_value_t = 2000.0)]
    rate_hz: f64,
    #[command(flatten)]
    window: WindowFlags,
    #[command(flatten)]
    features_flags: FeatureFlags,
    #[command(flatten)]
    hyper: HyperFlags,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Saved pipeline file
    #[arg(long)]
    model: PathBuf,
    /// Feature-matrix CSV to evaluate on
    #[arg(long)]
    features: PathBuf,
    /// Repetitions used for testing
    #[arg(long, default_value = "2,5")]
    test_reps: String,
    #[arg(long, default_value_t = 1)]
    subject: u32,
    /// Output directory for report.csv and summary.csv
    #[arg(long)]
    out: PathBuf,
    /// Also write per-subject confusion matrices
    #[arg(long)]
    emit_confusion: bool,
    #[arg(long, default_value_t = 10)]
    group_size: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Recording CSVs, one per subject (repeatable)
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Use a generated synthetic recording instead of input files
    #[arg(long)]
    synthetic: bool,
    /// Subject ids matching the inputs, e.g. 1,2,3 (defaults to 1..n)
    #[arg(long)]
    subjects: Option<String>,
    #[arg(long)]
    expected_channels: Option<usize>,
    #[arg(long)]
    rate_hz: Option<f64>,
    #[arg(long)]
    technique: Option<String>,
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    classifier: Option<String>,
    #[arg(long)]
    train_reps: Option<String>,
    #[arg(long)]
    test_reps: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    window_ms: Option<f64>,
    #[arg(long)]
    increment_ms: Option<f64>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    label_policy: Option<String>,
    #[arg(long)]
    agg_n: Option<usize>,
    #[arg(long)]
    sliding_aggregation: bool,
    #[arg(long)]
    include_rest: bool,
    /// auto, on or off
    #[arg(long)]
    standardize: Option<String>,
    #[arg(long)]
    emit_confusion: bool,
    #[arg(long)]
    group_size: Option<usize>,
    /// Flat key-value config file; flags override file values
    #[arg(long)]
    config_file: Option<PathBuf>,
    // synthetic-input knobs
    #[arg(long)]
    classes: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    move_s: Option<f64>,
    #[arg(long)]
    rest_s: Option<f64>,
    #[arg(long)]
    channels: Option<usize>,
    #[arg(long)]
    noise: Option<f64>,
    #[command(flatten)]
    hyper: HyperFlags,
    #[arg(long)]
    zc_threshold: Option<f64>,
    #[arg(long)]
    ssc_threshold: Option<f64>,
    #[arg(long)]
    hist_bins: Option<usize>,
    #[arg(long)]
    hist_sigma_span: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    /// knn, nb, dt or svm
    #[arg(long, default_value = "knn")]
    classifier: String,
    #[arg(long, default_value = "C1")]
    config: String,
    #[arg(long, default_value_t = 256.0)]
    window_ms: f64,
    #[arg(long, default_value_t = 10.0)]
    increment_ms: f64,
    #[arg(long, default_value_t = 2000.0)]
    rate_hz: f64,
    #[arg(long, default_value_t = 12)]
    channels: usize,
    #[arg(long, default_value_t = 17)]
    classes: usize,
    /// Training windows (synthetic input is sized to provide them)
    #[arg(long, default_value_t = 20000)]
    train_rows: usize,
    /// Measurement trials (at least 100)
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Benchmark on a real recording instead of synthetic data
    #[arg(long)]
    input: Option<PathBuf>,
    /// auto, on or off
    #[arg(long, default_value = "auto")]
    standardize: String,
    #[command(flatten)]
    hyper: HyperFlags,
}

fn args_err(reason: impl Into<String>) -> StageError {
    StageError {
        stage: "args",
        source: Error::InvalidSpec {
            what: "arguments",
            reason: reason.into(),
        },
    }
}

fn stage_args<T>(result: emgpr_core::Result<T>) -> RunResult<T> {
    result.map_err(|source| StageError {
        stage: "args",
        source,
    })
}

fn parse_u32_list(text: &str, what: &str) -> RunResult<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| args_err(format!("cannot parse `{t}` in {what}")))
        })
        .collect()
}

fn parse_rep_set(text: &str, what: &str) -> RunResult<BTreeSet<u32>> {
    Ok(parse_u32_list(text, what)?.into_iter().collect())
}

fn parse_technique(text: &str) -> RunResult<Technique> {
    Technique::parse(text)
        .ok_or_else(|| args_err(format!("unknown technique `{text}` (WA, AG or PROPOSED)")))
}

fn parse_classifier(text: &str) -> RunResult<ClassifierKind> {
    ClassifierKind::parse(text)
        .ok_or_else(|| args_err(format!("unknown classifier `{text}` (knn, nb, dt or svm)")))
}

fn parse_standardize(text: &str) -> RunResult<Option<bool>> {
    match text.to_ascii_lowercase().as_str() {
        "auto" => Ok(None),
        "on" => Ok(Some(true)),
        "off" => Ok(Some(false)),
        other => Err(args_err(format!(
            "standardize must be auto, on or off, got `{other}`"
        ))),
    }
}

fn parse_feature_config(name: &str, params: FeatureParams) -> RunResult<FeatureConfig> {
    stage_args(params.validate())?;
    if let Some(mut preset) = FeatureConfig::preset(name) {
        preset.params = params;
        return Ok(preset);
    }
    let kinds: Option<Vec<FeatureKind>> = name
        .split(',')
        .map(|t| FeatureKind::parse(t.trim()))
        .collect();
    match kinds {
        Some(kinds) if !kinds.is_empty() => {
            stage_args(FeatureConfig::new("custom", &kinds, params))
        }
        _ => Err(args_err(format!(
            "unknown feature config `{name}` (C1..C7 or a comma list of mav,mavs,wl,ssc,zc,hist,rms)"
        ))),
    }
}

/// Resolve window flags on top of a technique preset.
fn resolve_pipeline(
    flags: &WindowFlags,
    features: &FeatureFlags,
    rate_hz: f64,
) -> RunResult<PipelineSpec> {
    let technique = parse_technique(&flags.technique)?;
    let params = FeatureParams {
        zc_threshold: features.zc_threshold,
        ssc_threshold: features.ssc_threshold,
        hist_bins: features.hist_bins,
        hist_sigma_span: features.hist_sigma_span,
    };
    let config = parse_feature_config(&features.config, params)?;
    let mut spec = stage_args(PipelineSpec::for_technique(technique, rate_hz, config))?;
    if let Some(ms) = flags.window_ms {
        spec.window.length_ms = ms;
    }
    if let Some(ms) = flags.increment_ms {
        spec.window.increment_ms = ms;
    }
    if let Some(mode) = &flags.mode {
        spec.window.mode =
            WindowMode::parse(mode).ok_or_else(|| args_err(format!("unknown mode `{mode}`")))?;
    }
    if let Some(policy) = &flags.label_policy {
        spec.window.label_policy = LabelPolicy::parse(policy)
            .ok_or_else(|| args_err(format!("unknown label policy `{policy}`")))?;
    }
    if let Some(n) = flags.agg_n {
        spec.aggregation = Some(emgpr_core::windowing::AggregationSpec { n });
    }
    spec.sliding_aggregation = flags.sliding_aggregation;
    spec.include_rest = flags.include_rest;
    stage_args(spec.window.validate(rate_hz))?;
    Ok(spec)
}

fn cmd_ingest(args: IngestArgs) -> RunResult<()> {
    let rec = stage_with(
        "dataset",
        load_recording(&args.input, args.expected_channels),
    )?
    .with_subject(args.subject);
    let rec = stage_with("dataset", rec.with_sample_rate(args.rate_hz))?;
    let rest = rec.stimulus().iter().filter(|&&s| s == 0).count();
    let movements: BTreeSet<u32> = rec.stimulus().iter().copied().filter(|&s| s > 0).collect();
    let reps: BTreeSet<u32> = rec
        .repetition()
        .iter()
        .copied()
        .filter(|&r| r > 0)
        .collect();
    println!("recording: {}", args.input.display());
    println!(
        "  samples: {} ({:.1} s at {} Hz)",
        rec.len(),
        rec.len() as f64 / rec.sample_rate_hz(),
        rec.sample_rate_hz()
    );
    println!("  channels: {}", rec.num_channels());
    println!("  movements: {} distinct non-rest labels", movements.len());
    println!("  repetitions: {:?}", reps);
    println!(
        "  rest share: {:.1}%",
        100.0 * rest as f64 / rec.len() as f64
    );
    if let Some(out) = args.out {
        stage_with("dataset", write_recording(&rec, &out))?;
        println!("  canonical copy: {}", out.display());
    }
    Ok(())
}

fn stage_with<T>(name: &'static str, result: emgpr_core::Result<T>) -> RunResult<T> {
    result.map_err(|source| StageError {
        stage: name,
        source,
    })
}

fn cmd_synth(args: SynthArgs) -> RunResult<()> {
    let spec = SyntheticSpec {
        num_classes: args.classes,
        num_repetitions: args.reps,
        movement_duration_s: args.move_s,
        rest_duration_s: args.rest_s,
        num_channels: args.channels,
        sample_rate_hz: args.rate_hz,
        noise_level: args.noise,
        seed: args.seed,
    };
    let rec = stage_with("dataset", generate_synthetic(&spec))?;
    stage_with("dataset", write_recording(&rec, &args.out))?;
    println!(
        "wrote {} samples x {} channels to {}",
        rec.len(),
        rec.num_channels(),
        args.out.display()
    );
    Ok(())
}

fn cmd_featurize(args: FeaturizeArgs) -> RunResult<()> {
    let pipeline = resolve_pipeline(&args.window, &args.features, args.rate_hz)?;
    let rec = stage_with(
        "dataset",
        load_recording(&args.input, args.expected_channels),
    )?
    .with_subject(args.subject);
    let rec = stage_with("dataset", rec.with_sample_rate(args.rate_hz))?;
    let matrix = stage_with("features", featurize_recording(&rec, &pipeline))?;
    stage_with("features", write_feature_csv(&matrix, &args.out))?;
    println!(
        "wrote {} rows x {} columns to {}",
        matrix.n_rows(),
        matrix.n_cols(),
        args.out.display()
    );
    Ok(())
}

fn cmd_train(args: TrainArgs) -> RunResult<()> {
    let pipeline_spec = resolve_pipeline(&args.window, &args.features_flags, args.rate_hz)?;
    let matrix = stage_with("features", load_feature_csv(&args.features, args.subject))?;
    let expected_meta = column_layout(matrix.num_channels(), &pipeline_spec.config);
    if expected_meta != matrix.column_meta() {
        return Err(args_err(format!(
            "feature CSV columns do not match config {}",
            pipeline_spec.config.name
        )));
    }
    let train_reps = parse_rep_set(&args.train_reps, "--train-reps")?;
    let train_matrix = stage_with("split", filter_by_reps(&matrix, &train_reps))?;
    let classifier = parse_classifier(&args.classifier)?;
    let standardize = parse_standardize(&args.standardize)?;
    let hyper = args.hyper.resolve(args.seed);
    let trained = stage_with(
        "train",
        TrainedPipeline::fit(
            &train_matrix,
            pipeline_spec.technique,
            pipeline_spec.window.clone(),
            pipeline_spec.aggregation,
            pipeline_spec.config.clone(),
            classifier,
            &hyper,
            standardize,
        ),
    )?;
    stage_with("train", save_pipeline(&trained, &args.out))?;
    println!(
        "trained {} on {} rows ({} classes); saved to {}",
        classifier.name(),
        train_matrix.n_rows(),
        trained.classes.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> RunResult<()> {
    let pipeline = stage_with("train", load_pipeline(&args.model))?;
    let matrix = stage_with("features", load_feature_csv(&args.features, args.subject))?;
    let test_reps = parse_rep_set(&args.test_reps, "--test-reps")?;
    let test_matrix = stage_with("split", filter_by_reps(&matrix, &test_reps))?;
    let predicted = stage_with("evaluate", pipeline.predict_matrix(&test_matrix))?;
    let report = stage_with(
        "evaluate",
        EvalReport::new(
            args.subject,
            pipeline.technique.name(),
            pipeline.feature_config.name.clone(),
            pipeline.model.kind().name(),
            &predicted,
            test_matrix.labels(),
            pipeline.n_train_rows,
        ),
    )?;
    let summary = stage_with(
        "report",
        group_average(std::slice::from_ref(&report), args.group_size),
    )?;
    stage_with(
        "report",
        std::fs::create_dir_all(&args.out).map_err(Error::Io),
    )?;
    let report_path = args.out.join("report.csv");
    stage_with(
        "report",
        write_report_csv(std::slice::from_ref(&report), &report_path),
    )?;
    stage_with(
        "report",
        write_summary_csv(&summary, args.out.join("summary.csv")),
    )?;
    if args.emit_confusion {
        let path = args.out.join(format!("confusion_s{}.csv", args.subject));
        stage_with("report", write_confusion_csv(&report.confusion, path))?;
    }
    println!(
        "subject {}: {} {} {} accuracy {:.3}% ({} train rows, {} test rows)",
        report.subject_id,
        report.technique,
        report.config,
        report.classifier,
        report.accuracy_pct,
        report.n_train,
        report.n_test
    );
    println!("report: {}", report_path.display());
    Ok(())
}

const RUN_FILE_KEYS: &[&str] = &[
    "synthetic",
    "subjects",
    "expected-channels",
    "rate-hz",
    "technique",
    "config",
    "classifier",
    "train-reps",
    "test-reps",
    "seed",
    "out",
    "window-ms",
    "increment-ms",
    "mode",
    "label-policy",
    "agg-n",
    "sliding-aggregation",
    "include-rest",
    "standardize",
    "emit-confusion",
    "group-size",
    "classes",
    "reps",
    "move-s",
    "rest-s",
    "channels",
    "noise",
    "k",
    "max-depth",
    "min-samples-leaf",
    "lambda",
    "epochs",
    "var-smoothing",
    "zc-threshold",
    "ssc-threshold",
    "hist-bins",
    "hist-sigma-span",
];

fn cmd_run(args: RunArgs) -> RunResult<()> {
    let file = match &args.config_file {
        Some(path) => FileValues::new(stage_args(parse_config_file(path))?, RUN_FILE_KEYS)
            .map_err(|source| StageError {
                stage: "args",
                source,
            })?,
        None => FileValues::empty(),
    };
    let fv = |key: &str| file.raw(key).map(str::to_string);

    let rate_hz = match args.rate_hz {
        Some(v) => v,
        None => stage_args(file.parse::<f64>("rate-hz"))?.unwrap_or(2000.0),
    };
    let seed = match args.seed {
        Some(v) => v,
        None => stage_args(file.parse::<u64>("seed"))?.unwrap_or(0),
    };
    let technique_text = args
        .technique
        .clone()
        .or_else(|| fv("technique"))
        .unwrap_or_else(|| "PROPOSED".into());
    let config_text = args
        .config
        .clone()
        .or_else(|| fv("config"))
        .unwrap_or_else(|| "C1".into());
    let classifier_text = args
        .classifier
        .clone()
        .or_else(|| fv("classifier"))
        .unwrap_or_else(|| "knn".into());

    let window_flags = WindowFlags {
        technique: technique_text,
        window_ms: match args.window_ms {
            Some(v) => Some(v),
            None => stage_args(file.parse("window-ms"))?,
        },
        increment_ms: match args.increment_ms {
            Some(v) => Some(v),
            None => stage_args(file.parse("increment-ms"))?,
        },
        mode: args.mode.clone().or_else(|| fv("mode")),
        label_policy: args.label_policy.clone().or_else(|| fv("label-policy")),
        agg_n: match args.agg_n {
            Some(v) => Some(v),
            None => stage_args(file.parse("agg-n"))?,
        },
        sliding_aggregation: args.sliding_aggregation
            || stage_args(file.flag("sliding-aggregation"))?.unwrap_or(false),
        include_rest: args.include_rest || stage_args(file.flag("include-rest"))?.unwrap_or(false),
    };
    let feature_flags = FeatureFlags {
        config: config_text,
        zc_threshold: match args.zc_threshold {
            Some(v) => v,
            None => stage_args(file.parse("zc-threshold"))?.unwrap_or(0.0),
        },
        ssc_threshold: match args.ssc_threshold {
            Some(v) => v,
            None => stage_args(file.parse("ssc-threshold"))?.unwrap_or(0.0),
        },
        hist_bins: match args.hist_bins {
            Some(v) => v,
            None => stage_args(file.parse("hist-bins"))?.unwrap_or(20),
        },
        hist_sigma_span: match args.hist_sigma_span {
            Some(v) => v,
            None => stage_args(file.parse("hist-sigma-span"))?.unwrap_or(3.0),
        },
    };
    let pipeline = resolve_pipeline(&window_flags, &feature_flags, rate_hz)?;

    let synthetic = args.synthetic || stage_args(file.flag("synthetic"))?.unwrap_or(false);
    let input = if synthetic {
        if !args.inputs.is_empty() {
            return Err(args_err("--synthetic and --input are mutually exclusive"));
        }
        InputSource::Synthetic(SyntheticSpec {
            num_classes: match args.classes {
                Some(v) => v,
                None => stage_args(file.parse("classes"))?.unwrap_or(17),
            },
            num_repetitions: match args.reps {
                Some(v) => v,
                None => stage_args(file.parse("reps"))?.unwrap_or(6),
            },
            movement_duration_s: match args.move_s {
                Some(v) => v,
                None => stage_args(file.parse("move-s"))?.unwrap_or(5.0),
            },
            rest_duration_s: match args.rest_s {
                Some(v) => v,
                None => stage_args(file.parse("rest-s"))?.unwrap_or(3.0),
            },
            num_channels: match args.channels {
                Some(v) => v,
                None => stage_args(file.parse("channels"))?.unwrap_or(12),
            },
            sample_rate_hz: rate_hz,
            noise_level: match args.noise {
                Some(v) => v,
                None => stage_args(file.parse("noise"))?.unwrap_or(0.0),
            },
            seed,
        })
    } else {
        if args.inputs.is_empty() {
            return Err(args_err("give at least one --input, or --synthetic"));
        }
        InputSource::Files(args.inputs.clone())
    };

    let subject_ids = match args.subjects.clone().or_else(|| fv("subjects")) {
        Some(text) => parse_u32_list(&text, "--subjects")?,
        None => match &input {
            InputSource::Files(paths) => (1..=paths.len() as u32).collect(),
            InputSource::Synthetic(_) => vec![1],
        },
    };

    let train_reps = parse_rep_set(
        &args
            .train_reps
            .clone()
            .or_else(|| fv("train-reps"))
            .unwrap_or_else(|| "1,3,4,6".into()),
        "--train-reps",
    )?;
    let test_reps = parse_rep_set(
        &args
            .test_reps
            .clone()
            .or_else(|| fv("test-reps"))
            .unwrap_or_else(|| "2,5".into()),
        "--test-reps",
    )?;

    let classifier = parse_classifier(&classifier_text)?;
    let standardize = parse_standardize(
        &args
            .standardize
            .clone()
            .or_else(|| fv("standardize"))
            .unwrap_or_else(|| "auto".into()),
    )?;
    let hyper = HyperFlags {
        k: match args.hyper.k {
            Some(v) => Some(v),
            None => stage_args(file.parse("k"))?,
        },
        max_depth: match args.hyper.max_depth {
            Some(v) => Some(v),
            None => stage_args(file.parse("max-depth"))?,
        },
        min_samples_leaf: match args.hyper.min_samples_leaf {
            Some(v) => Some(v),
            None => stage_args(file.parse("min-samples-leaf"))?,
        },
        lambda: match args.hyper.lambda {
            Some(v) => Some(v),
            None => stage_args(file.parse("lambda"))?,
        },
        epochs: match args.hyper.epochs {
            Some(v) => Some(v),
            None => stage_args(file.parse("epochs"))?,
        },
        var_smoothing: match args.hyper.var_smoothing {
            Some(v) => Some(v),
            None => stage_args(file.parse("var-smoothing"))?,
        },
    }
    .resolve(seed);

    let out_dir = args
        .out
        .clone()
        .or_else(|| fv("out").map(PathBuf::from))
        .ok_or_else(|| args_err("--out is required"))?;

    let config = RunConfig {
        input,
        subject_ids,
        sample_rate_hz: rate_hz,
        expected_channels: match args.expected_channels {
            Some(v) => Some(v),
            None => stage_args(file.parse("expected-channels"))?,
        },
        pipeline,
        classifier,
        hyper,
        standardize,
        split: SplitSpec {
            train_repetitions: train_reps,
            test_repetitions: test_reps,
        },
        out_dir,
        emit_confusion: args.emit_confusion
            || stage_args(file.flag("emit-confusion"))?.unwrap_or(false),
        group_size: match args.group_size {
            Some(v) => v,
            None => stage_args(file.parse("group-size"))?.unwrap_or(10),
        },
    };

    let outputs = run_experiment(&config)?;
    for report in &outputs.reports {
        println!(
            "subject {}: {} {} {} accuracy {:.3}% ({} train rows, {} test rows)",
            report.subject_id,
            report.technique,
            report.config,
            report.classifier,
            report.accuracy_pct,
            report.n_train,
            report.n_test
        );
    }
    println!("report: {}", outputs.report_csv.display());
    println!("summary: {}", outputs.summary_csv.display());
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> RunResult<()> {
    let classifier = parse_classifier(&args.classifier)?;
    let standardize = parse_standardize(&args.standardize)?;
    let params = FeatureParams::default();
    let config = parse_feature_config(&args.config, params)?;
    let window = WindowSpec {
        length_ms: args.window_ms,
        increment_ms: args.increment_ms,
        latency_limit_ms: None,
        ..Default::default()
    };
    stage_args(window.validate(args.rate_hz))?;
    let cfg = BenchConfig {
        window,
        config,
        classifier,
        hyper: args.hyper.resolve(args.seed),
        standardize,
        sample_rate_hz: args.rate_hz,
        num_channels: args.channels,
        num_classes: args.classes,
        train_rows: args.train_rows,
        trials: args.trials,
        seed: args.seed,
        input: args.input.clone(),
    };
    let stats = benchmark_latency(&cfg)?;
    println!(
        "latency benchmark: {} + {}, window {} ms ({} samples x {} ch), increment {} ms",
        cfg.config.name,
        cfg.classifier.name(),
        stats.window_ms,
        cfg.window.window_samples(cfg.sample_rate_hz),
        cfg.num_channels,
        stats.budget_ms
    );
    println!(
        "  trials: {}, training rows: {}",
        stats.trials, stats.train_rows
    );
    println!("  median extract: {:.3} ms", stats.extract_ms);
    println!("  median predict: {:.3} ms", stats.predict_ms);
    println!("  median total:   {:.3} ms", stats.total_ms);
    println!("  verdict: {}", stats.verdict_line());
    Ok(())
}

fn dispatch(cli: Cli) -> RunResult<()> {
    match cli.command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Featurize(args) => cmd_featurize(args),
        Command::Train(args) => cmd_train(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Run(args) => cmd_run(*args),
        Command::Bench(args) => cmd_bench(args),
        Command::Presets => {
            print!("{}", render_presets());
            Ok(())
        }
    }
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source: &dyn std::error::Error = &e.source;
            while let Some(next) = source.source() {
                eprintln!("  caused by: {next}");
                source = next;
            }
            exit_code(&e.source)
        }
    }
}

fn main() {
    let code = match std::panic::catch_unwind(real_main) {
        Ok(code) => code,
        Err(_) => {
            eprintln!("error: internal failure");
            3
        }
    };
    std::process::exit(code);
}
