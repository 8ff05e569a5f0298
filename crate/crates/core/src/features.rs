//! Time-domain feature extraction and the labeled feature matrix.
//!
//! Seven per-channel features are supported: mean absolute value (MAV),
//! MAV slope (MAVS, second-half MAV minus first-half MAV), waveform
//! length (WL), slope sign changes (SSC), zero crossings (ZC), an
//! amplitude histogram (HIST) and root mean square (RMS). Each feature
//! contributes one column per channel except the histogram, which
//! contributes one per bin. Column order is fixed: channels ascending,
//! and within a channel the canonical kind order
//! (MAV, MAVS, WL, SSC, ZC, HIST, RMS) filtered to the selected kinds.
//!
//! Named configurations `C1..C7` select feature subsets; `C1` (all seven,
//! 26 values per channel) yields 312 columns on 12 channels.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::windowing::Segment;

/// One of the seven time-domain features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FeatureKind {
    Mav,
    Mavs,
    Wl,
    Ssc,
    Zc,
    Hist,
    Rms,
}

impl FeatureKind {
    /// The fixed column order within a channel.
    pub const CANONICAL_ORDER: [FeatureKind; 7] = [
        FeatureKind::Mav,
        FeatureKind::Mavs,
        FeatureKind::Wl,
        FeatureKind::Ssc,
        FeatureKind::Zc,
        FeatureKind::Hist,
        FeatureKind::Rms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Mav => "mav",
            FeatureKind::Mavs => "mavs",
            FeatureKind::Wl => "wl",
            FeatureKind::Ssc => "ssc",
            FeatureKind::Zc => "zc",
            FeatureKind::Hist => "hist",
            FeatureKind::Rms => "rms",
        }
    }

    /// Display name as used in preset listings.
    pub fn upper_name(self) -> &'static str {
        match self {
            FeatureKind::Mav => "MAV",
            FeatureKind::Mavs => "MAVS",
            FeatureKind::Wl => "WL",
            FeatureKind::Ssc => "SSC",
            FeatureKind::Zc => "ZC",
            FeatureKind::Hist => "HIST",
            FeatureKind::Rms => "RMS",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mav" => Some(FeatureKind::Mav),
            "mavs" => Some(FeatureKind::Mavs),
            "wl" => Some(FeatureKind::Wl),
            "ssc" => Some(FeatureKind::Ssc),
            "zc" => Some(FeatureKind::Zc),
            "hist" => Some(FeatureKind::Hist),
            "rms" => Some(FeatureKind::Rms),
            _ => None,
        }
    }

    /// Number of columns this feature contributes per channel.
    pub fn dimension(self, params: &FeatureParams) -> usize {
        match self {
            FeatureKind::Hist => params.hist_bins,
            _ => 1,
        }
    }

    fn canonical_rank(self) -> usize {
        Self::CANONICAL_ORDER
            .iter()
            .position(|&k| k == self)
            .expect("kind is in the canonical order")
    }
}

/// Shared feature parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureParams {
    pub zc_threshold: f64,
    pub ssc_threshold: f64,
    pub hist_bins: usize,
    pub hist_sigma_span: f64,
}

impl Default for FeatureParams {
    fn default() -> Self {
        Self {
            zc_threshold: 0.0,
            ssc_threshold: 0.0,
            hist_bins: 20,
            hist_sigma_span: 3.0,
        }
    }
}

impl FeatureParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidSpec {
            what: "feature params",
            reason,
        };
        if !(self.zc_threshold.is_finite() && self.zc_threshold >= 0.0) {
            return Err(fail(format!(
                "zc threshold must be nonnegative, got {}",
                self.zc_threshold
            )));
        }
        if !(self.ssc_threshold.is_finite() && self.ssc_threshold >= 0.0) {
            return Err(fail(format!(
                "ssc threshold must be nonnegative, got {}",
                self.ssc_threshold
            )));
        }
        if self.hist_bins < 1 {
            return Err(fail("histogram needs at least 1 bin".into()));
        }
        if !(self.hist_sigma_span.is_finite() && self.hist_sigma_span > 0.0) {
            return Err(fail(format!(
                "histogram sigma span must be positive, got {}",
                self.hist_sigma_span
            )));
        }
        Ok(())
    }
}

/// A named selection of feature kinds, kept in canonical column order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub name: String,
    kinds: Vec<FeatureKind>,
    pub params: FeatureParams,
}

impl FeatureConfig {
    pub fn new(
        name: impl Into<String>,
        kinds: &[FeatureKind],
        params: FeatureParams,
    ) -> Result<Self> {
        if kinds.is_empty() {
            return Err(Error::InvalidSpec {
                what: "feature config",
                reason: "at least one feature kind required".into(),
            });
        }
        params.validate()?;
        let mut ordered: Vec<FeatureKind> = kinds.to_vec();
        ordered.sort_by_key(|k| k.canonical_rank());
        ordered.dedup();
        Ok(Self {
            name: name.into(),
            kinds: ordered,
            params,
        })
    }

    /// Look up one of the named configurations `C1..C7`.
    pub fn preset(name: &str) -> Option<Self> {
        use FeatureKind::*;
        let kinds: &[FeatureKind] = match name.to_ascii_uppercase().as_str() {
            "C1" => &[Mav, Mavs, Wl, Ssc, Zc, Hist, Rms],
            "C2" => &[Rms],
            "C3" => &[Wl],
            "C4" => &[Wl, Rms],
            "C5" => &[Wl, Zc, Rms],
            "C6" => &[Wl, Ssc],
            "C7" => &[Mav, Mavs, Wl, Ssc, Zc, Rms],
            _ => return None,
        };
        Some(
            Self::new(name.to_ascii_uppercase(), kinds, FeatureParams::default())
                .expect("presets are valid"),
        )
    }

    pub const PRESET_NAMES: [&'static str; 7] = ["C1", "C2", "C3", "C4", "C5", "C6", "C7"];

    pub fn kinds(&self) -> &[FeatureKind] {
        &self.kinds
    }

    /// Columns contributed per channel.
    pub fn per_channel_width(&self) -> usize {
        self.kinds.iter().map(|k| k.dimension(&self.params)).sum()
    }

    /// Total row width on `num_channels` channels.
    pub fn row_width(&self, num_channels: usize) -> usize {
        num_channels * self.per_channel_width()
    }
}

fn check_window(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::WindowTooShort { have: x.len() });
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("sample {i} is not finite")));
    }
    Ok(())
}

/// Mean absolute value: `(1/M) * sum(|x_i|)`.
pub fn mav(x: &[f64]) -> Result<f64> {
    check_window(x)?;
    Ok(x.iter().map(|v| v.abs()).sum::<f64>() / x.len() as f64)
}

/// MAV slope: MAV of the second half minus MAV of the first half.
pub fn mavs(x: &[f64]) -> Result<f64> {
    check_window(x)?;
    let half = x.len() / 2;
    let first = x[..half].iter().map(|v| v.abs()).sum::<f64>() / half as f64;
    let second = x[half..].iter().map(|v| v.abs()).sum::<f64>() / (x.len() - half) as f64;
    Ok(second - first)
}

/// Waveform length: `sum(|x_i - x_{i-1}|)`.
pub fn wl(x: &[f64]) -> Result<f64> {
    check_window(x)?;
    Ok(x.windows(2).map(|w| (w[1] - w[0]).abs()).sum())
}

/// Zero crossings: sign changes between consecutive samples whose jump is
/// at least `threshold`.
pub fn zc(x: &[f64], threshold: f64) -> Result<usize> {
    check_window(x)?;
    Ok(x.windows(2)
        .filter(|w| w[0] * w[1] < 0.0 && (w[0] - w[1]).abs() >= threshold)
        .count())
}

/// Slope sign changes: strict local extrema whose neighboring-slope
/// product reaches `threshold`.
pub fn ssc(x: &[f64], threshold: f64) -> Result<usize> {
    check_window(x)?;
    let mut count = 0;
    for i in 1..x.len() - 1 {
        let a = x[i] - x[i - 1];
        let b = x[i] - x[i + 1];
        let product = a * b;
        if product > 0.0 && product >= threshold {
            count += 1;
        }
    }
    Ok(count)
}

/// Root mean square: `sqrt((1/M) * sum(x_i^2))`.
pub fn rms(x: &[f64]) -> Result<f64> {
    check_window(x)?;
    Ok((x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt())
}

/// Amplitude histogram: `bins` equal intervals spanning
/// `[-span*sigma, +span*sigma]` around zero, where `sigma` is the window's
/// population standard deviation. Samples outside the range clamp to the
/// first/last bin; bins are half-open with the last bin closed. When
/// `sigma` is zero every sample lands in the center bin `floor(bins/2)`.
/// Counts always sum to the window length.
pub fn hist(x: &[f64], bins: usize, span: f64) -> Result<Vec<f64>> {
    check_window(x)?;
    if bins < 1 {
        return Err(Error::InvalidSpec {
            what: "feature params",
            reason: "histogram needs at least 1 bin".into(),
        });
    }
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidSpec {
            what: "feature params",
            reason: format!("histogram sigma span must be positive, got {span}"),
        });
    }
    let m = x.len() as f64;
    let mean = x.iter().sum::<f64>() / m;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
    let sigma = var.sqrt();
    let mut counts = vec![0.0; bins];
    if sigma == 0.0 {
        counts[bins / 2] = m;
        return Ok(counts);
    }
    let lo = -span * sigma;
    let width = 2.0 * span * sigma / bins as f64;
    for &v in x {
        let raw = ((v - lo) / width).floor();
        let idx = (raw.max(0.0) as usize).min(bins - 1);
        counts[idx] += 1.0;
    }
    Ok(counts)
}

/// Where a feature-matrix column came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMeta {
    /// 0-based channel index; rendered 1-based in column names.
    pub channel: usize,
    pub kind: FeatureKind,
    /// Histogram bin index, `None` for scalar features.
    pub bin: Option<usize>,
}

impl ColumnMeta {
    pub fn column_name(&self) -> String {
        match self.bin {
            Some(b) => format!("ch{}_{}_{}", self.channel + 1, self.kind.name(), b),
            None => format!("ch{}_{}", self.channel + 1, self.kind.name()),
        }
    }

    pub fn parse_name(name: &str) -> Option<Self> {
        let rest = name.strip_prefix("ch")?;
        let mut parts = rest.split('_');
        let channel: usize = parts.next()?.parse().ok()?;
        if channel == 0 {
            return None;
        }
        let kind = FeatureKind::parse(parts.next()?)?;
        let bin = match (kind, parts.next()) {
            (FeatureKind::Hist, Some(b)) => Some(b.parse().ok()?),
            (FeatureKind::Hist, None) | (_, Some(_)) => return None,
            (_, None) => None,
        };
        if parts.next().is_some() {
            return None;
        }
        Some(Self {
            channel: channel - 1,
            kind,
            bin,
        })
    }
}

/// The deterministic column layout for a channel count and configuration.
pub fn column_layout(num_channels: usize, config: &FeatureConfig) -> Vec<ColumnMeta> {
    let mut meta = Vec::with_capacity(config.row_width(num_channels));
    for channel in 0..num_channels {
        for &kind in config.kinds() {
            match kind {
                FeatureKind::Hist => {
                    for bin in 0..config.params.hist_bins {
                        meta.push(ColumnMeta {
                            channel,
                            kind,
                            bin: Some(bin),
                        });
                    }
                }
                _ => meta.push(ColumnMeta {
                    channel,
                    kind,
                    bin: None,
                }),
            }
        }
    }
    meta
}

/// Extract one feature row from a segment: channels in order, and within
/// each channel the configuration's kinds in order.
pub fn extract(segment: &Segment, config: &FeatureConfig) -> Result<Vec<f64>> {
    config.params.validate()?;
    let mut row = Vec::with_capacity(config.row_width(segment.n_channels()));
    for c in 0..segment.n_channels() {
        let x = segment.channel(c);
        for &kind in config.kinds() {
            let annotate = |source: Error| Error::Feature {
                channel: c + 1,
                kind: kind.name(),
                source: Box::new(source),
            };
            match kind {
                FeatureKind::Mav => row.push(mav(x).map_err(annotate)?),
                FeatureKind::Mavs => row.push(mavs(x).map_err(annotate)?),
                FeatureKind::Wl => row.push(wl(x).map_err(annotate)?),
                FeatureKind::Ssc => {
                    row.push(ssc(x, config.params.ssc_threshold).map_err(annotate)? as f64)
                }
                FeatureKind::Zc => {
                    row.push(zc(x, config.params.zc_threshold).map_err(annotate)? as f64)
                }
                FeatureKind::Hist => row.extend(
                    hist(x, config.params.hist_bins, config.params.hist_sigma_span)
                        .map_err(annotate)?,
                ),
                FeatureKind::Rms => row.push(rms(x).map_err(annotate)?),
            }
        }
    }
    Ok(row)
}

/// An `N x P` feature matrix with column provenance and per-row labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    values: Vec<f64>,
    n_cols: usize,
    column_meta: Vec<ColumnMeta>,
    labels: Vec<u32>,
    repetitions: Vec<u32>,
    pub subject_id: u32,
}

impl FeatureMatrix {
    pub fn from_rows(
        column_meta: Vec<ColumnMeta>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u32>,
        repetitions: Vec<u32>,
        subject_id: u32,
    ) -> Result<Self> {
        let n_cols = column_meta.len();
        if n_cols == 0 {
            return Err(Error::Shape(
                "feature matrix needs at least one column".into(),
            ));
        }
        if rows.len() != labels.len() || rows.len() != repetitions.len() {
            return Err(Error::Shape(format!(
                "{} rows vs {} labels vs {} repetitions",
                rows.len(),
                labels.len(),
                repetitions.len()
            )));
        }
        let mut values = Vec::with_capacity(rows.len() * n_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} values, expected {n_cols}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!(
                    "row {i} contains a non-finite value"
                )));
            }
            values.extend_from_slice(row);
        }
        Ok(Self {
            values,
            n_cols,
            column_meta,
            labels,
            repetitions,
            subject_id,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn repetitions(&self) -> &[u32] {
        &self.repetitions
    }

    pub fn column_meta(&self) -> &[ColumnMeta] {
        &self.column_meta
    }

    /// Channel count implied by the column provenance.
    pub fn num_channels(&self) -> usize {
        self.column_meta
            .iter()
            .map(|m| m.channel + 1)
            .max()
            .unwrap_or(0)
    }

    /// Sorted distinct labels.
    pub fn classes(&self) -> Vec<u32> {
        let mut classes: Vec<u32> = self.labels.clone();
        classes.sort_unstable();
        classes.dedup();
        classes
    }

    /// New matrix holding the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        let mut values = Vec::with_capacity(indices.len() * self.n_cols);
        let mut labels = Vec::with_capacity(indices.len());
        let mut repetitions = Vec::with_capacity(indices.len());
        for &i in indices {
            values.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
            repetitions.push(self.repetitions[i]);
        }
        FeatureMatrix {
            values,
            n_cols: self.n_cols,
            column_meta: self.column_meta.clone(),
            labels,
            repetitions,
            subject_id: self.subject_id,
        }
    }

    /// Replace the value storage, keeping labels and provenance. The new
    /// values must have the same shape.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> FeatureMatrix {
        debug_assert_eq!(values.len(), self.values.len());
        FeatureMatrix {
            values,
            n_cols: self.n_cols,
            column_meta: self.column_meta.clone(),
            labels: self.labels.clone(),
            repetitions: self.repetitions.clone(),
            subject_id: self.subject_id,
        }
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Build the feature matrix for a slice of segments. Row `t` is
/// `extract(segments[t])`; labels and repetitions are copied through.
pub fn build_matrix(
    segments: &[Segment],
    config: &FeatureConfig,
    subject_id: u32,
) -> Result<FeatureMatrix> {
    if segments.is_empty() {
        return Err(Error::EmptyInput("no segments to featurize".into()));
    }
    let n_ch = segments[0].n_channels();
    for seg in segments {
        if seg.n_channels() != n_ch {
            return Err(Error::Shape(format!(
                "segment {} has {} channels, expected {n_ch}",
                seg.window_index,
                seg.n_channels()
            )));
        }
    }
    let meta = column_layout(n_ch, config);
    let rows: Vec<Vec<f64>> = segments
        .par_iter()
        .map(|seg| extract(seg, config))
        .collect::<Result<_>>()?;
    let labels = segments.iter().map(|s| s.label).collect();
    let repetitions = segments.iter().map(|s| s.repetition).collect();
    FeatureMatrix::from_rows(meta, rows, labels, repetitions, subject_id)
}

/// Streaming variant of [`build_matrix`]: featurizes chunks of the segment
/// stream so long recordings never hold every window in memory. Row order
/// and values are identical to the slice version.
pub fn build_matrix_streaming(
    segments: impl Iterator<Item = Result<Segment>>,
    config: &FeatureConfig,
    subject_id: u32,
) -> Result<FeatureMatrix> {
    const CHUNK: usize = 1024;
    let mut meta: Option<Vec<ColumnMeta>> = None;
    let mut n_ch = 0;
    let mut values: Vec<f64> = Vec::new();
    let mut labels: Vec<u32> = Vec::new();
    let mut repetitions: Vec<u32> = Vec::new();
    let mut buffer: Vec<Segment> = Vec::with_capacity(CHUNK);

    let flush = |buffer: &mut Vec<Segment>,
                 values: &mut Vec<f64>,
                 labels: &mut Vec<u32>,
                 repetitions: &mut Vec<u32>|
     -> Result<()> {
        let rows: Vec<Vec<f64>> = buffer
            .par_iter()
            .map(|seg| extract(seg, config))
            .collect::<Result<_>>()?;
        for (seg, row) in buffer.iter().zip(&rows) {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!(
                    "window {} produced a non-finite feature",
                    seg.window_index
                )));
            }
            values.extend_from_slice(row);
            labels.push(seg.label);
            repetitions.push(seg.repetition);
        }
        buffer.clear();
        Ok(())
    };

    for seg in segments {
        let seg = seg?;
        if let Some(_meta) = &meta {
            if seg.n_channels() != n_ch {
                return Err(Error::Shape(format!(
                    "segment {} has {} channels, expected {n_ch}",
                    seg.window_index,
                    seg.n_channels()
                )));
            }
        } else {
            n_ch = seg.n_channels();
            meta = Some(column_layout(n_ch, config));
        }
        buffer.push(seg);
        if buffer.len() == CHUNK {
            flush(&mut buffer, &mut values, &mut labels, &mut repetitions)?;
        }
    }
    if !buffer.is_empty() {
        flush(&mut buffer, &mut values, &mut labels, &mut repetitions)?;
    }
    let meta = meta.ok_or_else(|| Error::EmptyInput("no segments to featurize".into()))?;
    let n_cols = meta.len();
    Ok(FeatureMatrix {
        values,
        n_cols,
        column_meta: meta,
        labels,
        repetitions,
        subject_id,
    })
}

/// Write a feature matrix as CSV: `label,repetition,<ch>_<kind>[_<bin>]...`
/// with one row per window. Values use the shortest round-trip decimal
/// form, so reloading reproduces the matrix exactly.
pub fn write_feature_csv(matrix: &FeatureMatrix, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_feature_csv_to(matrix, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_feature_csv_to(matrix: &FeatureMatrix, w: &mut impl Write) -> Result<()> {
    write!(w, "label,repetition")?;
    for meta in matrix.column_meta() {
        write!(w, ",{}", meta.column_name())?;
    }
    writeln!(w)?;
    for i in 0..matrix.n_rows() {
        write!(w, "{},{}", matrix.labels[i], matrix.repetitions[i])?;
        for v in matrix.row(i) {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Load a feature matrix from its CSV form. The subject id is not stored
/// in the file and must be supplied.
pub fn load_feature_csv(path: impl AsRef<Path>, subject_id: u32) -> Result<FeatureMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    read_feature_csv(BufReader::new(file), subject_id)
}

pub fn read_feature_csv(reader: impl BufRead, subject_id: u32) -> Result<FeatureMatrix> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(Error::EmptyInput("file has no header line".into())),
    };
    let header = header.trim_end_matches('\r');
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 3 || cols[0] != "label" || cols[1] != "repetition" {
        return Err(Error::Format {
            row: 1,
            reason: format!("header must start with `label,repetition`, got `{header}`"),
        });
    }
    let mut column_meta = Vec::with_capacity(cols.len() - 2);
    for name in &cols[2..] {
        let meta = ColumnMeta::parse_name(name).ok_or_else(|| Error::Format {
            row: 1,
            reason: format!("unrecognized feature column `{name}`"),
        })?;
        column_meta.push(meta);
    }
    let n_cols = column_meta.len();
    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut repetitions = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        let line = line?;
        let line = line.trim_end_matches('\r');
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n_cols + 2 {
            return Err(Error::Format {
                row,
                reason: format!("expected {} fields, found {}", n_cols + 2, fields.len()),
            });
        }
        labels.push(fields[0].parse().map_err(|e| Error::Parse {
            row,
            column: "label".into(),
            reason: format!("{e}"),
        })?);
        repetitions.push(fields[1].parse().map_err(|e| Error::Parse {
            row,
            column: "repetition".into(),
            reason: format!("{e}"),
        })?);
        for (j, field) in fields[2..].iter().enumerate() {
            let v: f64 = field.parse().map_err(|e| Error::Parse {
                row,
                column: column_meta[j].column_name(),
                reason: format!("{e}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: column_meta[j].column_name(),
                    reason: format!("feature values must be finite, got {field}"),
                });
            }
            values.push(v);
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput("feature matrix has no rows".into()));
    }
    Ok(FeatureMatrix {
        values,
        n_cols,
        column_meta,
        labels,
        repetitions,
        subject_id,
    })
}
