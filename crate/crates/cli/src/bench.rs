//! Per-window latency benchmark: median featurize and predict times
//! against the increment budget and the 300 ms window ceiling.

use std::path::PathBuf;
use std::time::Instant;

use emgpr_core::classifiers::{ClassifierKind, Hyperparams, TrainedPipeline};
use emgpr_core::dataset::{generate_synthetic, load_recording, Recording, SyntheticSpec};
use emgpr_core::error::Error;
use emgpr_core::features::{build_matrix_streaming, extract, FeatureConfig};
use emgpr_core::windowing::{segment_iter, Segment, Technique, WindowSpec};

use crate::{stage, RunResult};

/// Window length above this is assumed to produce user-noticeable delay.
pub const HARD_LIMIT_MS: f64 = 300.0;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Window parameters; the latency ceiling is checked by the verdict,
    /// not by spec validation, so over-limit windows can be measured.
    pub window: WindowSpec,
    pub config: FeatureConfig,
    pub classifier: ClassifierKind,
    pub hyper: Hyperparams,
    pub standardize: Option<bool>,
    pub sample_rate_hz: f64,
    pub num_channels: usize,
    pub num_classes: usize,
    /// Training windows to use (capped by what the input provides).
    pub train_rows: usize,
    /// Measurement trials; at least 100.
    pub trials: usize,
    pub seed: u64,
    /// Measure on a real recording instead of synthetic data.
    pub input: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            window: WindowSpec {
                latency_limit_ms: None,
                ..Default::default()
            },
            config: FeatureConfig::preset("C1").expect("C1 exists"),
            classifier: ClassifierKind::Knn,
            hyper: Hyperparams::default(),
            standardize: None,
            sample_rate_hz: 2000.0,
            num_channels: 12,
            num_classes: 17,
            train_rows: 20_000,
            trials: 200,
            seed: 0,
            input: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LatencyStats {
    pub extract_ms: f64,
    pub predict_ms: f64,
    pub total_ms: f64,
    /// The increment: a new window arrives this often.
    pub budget_ms: f64,
    pub limit_ms: f64,
    pub window_ms: f64,
    pub trials: usize,
    pub train_rows: usize,
    pub pass: bool,
    pub violation: Option<String>,
}

impl LatencyStats {
    pub fn verdict_line(&self) -> String {
        match &self.violation {
            None => format!(
                "PASS (median total {:.3} ms < {} ms increment budget; window {} ms <= {} ms limit)",
                self.total_ms, self.budget_ms, self.window_ms, self.limit_ms
            ),
            Some(v) => format!("FAIL ({v})"),
        }
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("durations are finite"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// A synthetic recording long enough to yield `windows` analysis windows,
/// with short movement blocks so every class appears early.
fn bench_recording(cfg: &BenchConfig, windows: usize) -> emgpr_core::Result<Recording> {
    let rate = cfg.sample_rate_hz;
    let w = cfg.window.window_samples(rate);
    let stride = cfg.window.stride_samples(rate).max(1);
    let needed = windows * stride + w + stride;
    let move_s = 0.25;
    let rest_s = 0.05;
    let block = ((move_s + rest_s) * rate) as usize;
    let reps = needed.div_ceil(cfg.num_classes * block).max(1);
    generate_synthetic(&SyntheticSpec {
        num_classes: cfg.num_classes.max(2),
        num_repetitions: reps,
        movement_duration_s: move_s,
        rest_duration_s: rest_s,
        num_channels: cfg.num_channels,
        sample_rate_hz: rate,
        noise_level: 0.0,
        seed: cfg.seed,
    })
}

/// Train a pipeline (on the fly) and measure the median per-window
/// feature-extraction and prediction times over `trials` windows.
pub fn benchmark_latency(cfg: &BenchConfig) -> RunResult<LatencyStats> {
    if cfg.trials < 100 {
        return Err(crate::StageError {
            stage: "bench",
            source: Error::InvalidSpec {
                what: "bench config",
                reason: format!("need at least 100 trials, got {}", cfg.trials),
            },
        });
    }
    let recording = match &cfg.input {
        Some(path) => {
            let rec = stage("dataset", load_recording(path, Some(cfg.num_channels)))?;
            stage("dataset", rec.with_sample_rate(cfg.sample_rate_hz))?
        }
        None => stage("dataset", bench_recording(cfg, cfg.train_rows + cfg.trials))?,
    };

    let train_matrix = stage("features", {
        segment_iter(&recording, &cfg.window).and_then(|iter| {
            build_matrix_streaming(iter.take(cfg.train_rows).map(Ok), &cfg.config, 1)
        })
    })?;
    let mut queries: Vec<Segment> = stage(
        "features",
        segment_iter(&recording, &cfg.window).map(|iter| {
            iter.skip(cfg.train_rows.min(train_matrix.n_rows()))
                .take(cfg.trials)
                .collect::<Vec<_>>()
        }),
    )?;
    if queries.is_empty() {
        // the input had no windows beyond the training span; measure on
        // the training windows instead
        queries = stage(
            "features",
            segment_iter(&recording, &cfg.window).map(|iter| iter.take(cfg.trials).collect()),
        )?;
    }
    let queries: Vec<&Segment> = if queries.len() >= cfg.trials {
        queries.iter().collect()
    } else {
        // short input: cycle what we have
        (0..cfg.trials)
            .map(|i| &queries[i % queries.len()])
            .collect()
    };

    let pipeline = stage(
        "train",
        TrainedPipeline::fit(
            &train_matrix,
            Technique::Proposed,
            cfg.window.clone(),
            None,
            cfg.config.clone(),
            cfg.classifier,
            &cfg.hyper,
            cfg.standardize,
        ),
    )?;

    // warm-up pass
    for seg in queries.iter().take(5) {
        let row = stage("bench", extract(seg, &cfg.config))?;
        stage("bench", pipeline.predict_row(&row))?;
    }

    let mut extract_times = Vec::with_capacity(cfg.trials);
    let mut predict_times = Vec::with_capacity(cfg.trials);
    let mut total_times = Vec::with_capacity(cfg.trials);
    for seg in &queries {
        let t0 = Instant::now();
        let row = stage("bench", extract(seg, &cfg.config))?;
        let t1 = Instant::now();
        stage("bench", pipeline.predict_row(&row))?;
        let t2 = Instant::now();
        let e = (t1 - t0).as_secs_f64() * 1e3;
        let p = (t2 - t1).as_secs_f64() * 1e3;
        extract_times.push(e);
        predict_times.push(p);
        total_times.push(e + p);
    }

    let extract_ms = median(&mut extract_times);
    let predict_ms = median(&mut predict_times);
    let total_ms = median(&mut total_times);
    let budget_ms = cfg.window.increment_ms;
    let window_ms = cfg.window.length_ms;

    let violation = if window_ms > HARD_LIMIT_MS {
        Some(format!(
            "window length {window_ms} ms exceeds the {HARD_LIMIT_MS} ms limit"
        ))
    } else if total_ms >= budget_ms {
        Some(format!(
            "median total {total_ms:.3} ms exceeds the {budget_ms} ms increment budget"
        ))
    } else {
        None
    };

    Ok(LatencyStats {
        extract_ms,
        predict_ms,
        total_ms,
        budget_ms,
        limit_ms: HARD_LIMIT_MS,
        window_ms,
        trials: cfg.trials,
        train_rows: train_matrix.n_rows(),
        pass: violation.is_none(),
        violation,
    })
}
