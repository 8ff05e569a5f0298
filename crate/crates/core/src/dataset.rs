//! Recording data model, CSV ingestion, deterministic synthetic
//! generation, and repetition-based train/test splits.
//!
//! The canonical on-disk form of a recording is a UTF-8 CSV with header
//! `sample_index,ch1,...,chC,stimulus,repetition`. Voltages are written
//! with the shortest decimal representation that round-trips, so a
//! write-then-read cycle reproduces the recording bit for bit.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// Sampling rate assumed when none is given.
pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 2000.0;

/// Per-channel noise amplitude of the rest state in synthetic recordings.
const REST_AMPLITUDE: f64 = 0.05;

/// One multi-channel sEMG recording with per-sample stimulus and
/// repetition labels.
///
/// Storage is channel-major: `channel(c)[i]` is sample `i` of channel `c`.
/// All label/sample sequences have the same length `L >= 1`. A stimulus of
/// 0 means rest; repetitions are 0 during rest and `1..=R` during movement.
#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    pub subject_id: u32,
    pub source_tag: String,
    sample_rate_hz: f64,
    channels: Vec<Vec<f64>>,
    stimulus: Vec<u32>,
    repetition: Vec<u32>,
}

impl Recording {
    pub fn new(
        subject_id: u32,
        source_tag: impl Into<String>,
        sample_rate_hz: f64,
        channels: Vec<Vec<f64>>,
        stimulus: Vec<u32>,
        repetition: Vec<u32>,
    ) -> Result<Self> {
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidSpec {
                what: "recording",
                reason: format!("sample rate must be positive, got {sample_rate_hz}"),
            });
        }
        if channels.is_empty() {
            return Err(Error::InvalidSpec {
                what: "recording",
                reason: "at least one channel required".into(),
            });
        }
        let len = stimulus.len();
        if len == 0 {
            return Err(Error::EmptyInput("recording has no samples".into()));
        }
        if repetition.len() != len {
            return Err(Error::Shape(format!(
                "stimulus has {len} samples but repetition has {}",
                repetition.len()
            )));
        }
        for (c, ch) in channels.iter().enumerate() {
            if ch.len() != len {
                return Err(Error::Shape(format!(
                    "channel {} has {} samples, expected {len}",
                    c + 1,
                    ch.len()
                )));
            }
            if let Some(i) = ch.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!(
                    "channel {} sample {i} is not finite",
                    c + 1
                )));
            }
        }
        Ok(Self {
            subject_id,
            source_tag: source_tag.into(),
            sample_rate_hz,
            channels,
            stimulus,
            repetition,
        })
    }

    /// Number of samples `L`.
    pub fn len(&self) -> usize {
        self.stimulus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stimulus.is_empty()
    }

    /// Number of channels `C`.
    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.channels[c]
    }

    pub fn stimulus(&self) -> &[u32] {
        &self.stimulus
    }

    pub fn repetition(&self) -> &[u32] {
        &self.repetition
    }

    pub fn max_stimulus(&self) -> u32 {
        self.stimulus.iter().copied().max().unwrap_or(0)
    }

    pub fn max_repetition(&self) -> u32 {
        self.repetition.iter().copied().max().unwrap_or(0)
    }

    /// Distinct repetition indices present in the recording.
    pub fn observed_repetitions(&self) -> BTreeSet<u32> {
        self.repetition.iter().copied().collect()
    }

    pub fn with_subject(mut self, subject_id: u32) -> Self {
        self.subject_id = subject_id;
        self
    }

    pub fn with_sample_rate(mut self, sample_rate_hz: f64) -> Result<Self> {
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidSpec {
                what: "recording",
                reason: format!("sample rate must be positive, got {sample_rate_hz}"),
            });
        }
        self.sample_rate_hz = sample_rate_hz;
        Ok(self)
    }
}

/// Parameters of the deterministic synthetic generator.
///
/// The generated layout is, for each repetition `r` in `1..=R` and each
/// class `k` in `1..=K`: a movement block labeled `(k, r)` followed by a
/// rest block labeled `(0, 0)`. Class signals are zero-mean noise whose
/// per-channel standard deviation follows a class-specific amplitude
/// profile; profiles are pairwise distinct so classes are separable.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub num_classes: usize,
    pub num_repetitions: usize,
    pub movement_duration_s: f64,
    pub rest_duration_s: f64,
    pub num_channels: usize,
    pub sample_rate_hz: f64,
    pub noise_level: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            num_classes: 17,
            num_repetitions: 6,
            movement_duration_s: 5.0,
            rest_duration_s: 3.0,
            num_channels: 12,
            sample_rate_hz: DEFAULT_SAMPLE_RATE_HZ,
            noise_level: 0.0,
            seed: 0,
        }
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidSpec {
            what: "synthetic spec",
            reason,
        };
        if self.num_classes < 2 {
            return Err(fail(format!(
                "need at least 2 classes, got {}",
                self.num_classes
            )));
        }
        if self.num_repetitions < 1 {
            return Err(fail("need at least 1 repetition".into()));
        }
        if self.num_channels < 1 {
            return Err(fail("need at least 1 channel".into()));
        }
        if !(self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0) {
            return Err(fail(format!(
                "sample rate must be positive, got {}",
                self.sample_rate_hz
            )));
        }
        for (name, d) in [
            ("movement_duration_s", self.movement_duration_s),
            ("rest_duration_s", self.rest_duration_s),
        ] {
            if !(d.is_finite() && d > 0.0) {
                return Err(fail(format!("{name} must be positive, got {d}")));
            }
            if (d * self.sample_rate_hz).round() < 1.0 {
                return Err(fail(format!("{name} of {d}s yields no samples")));
            }
        }
        if !(self.noise_level.is_finite() && self.noise_level >= 0.0) {
            return Err(fail(format!(
                "noise level must be nonnegative, got {}",
                self.noise_level
            )));
        }
        Ok(())
    }

    fn movement_samples(&self) -> usize {
        (self.movement_duration_s * self.sample_rate_hz).round() as usize
    }

    fn rest_samples(&self) -> usize {
        (self.rest_duration_s * self.sample_rate_hz).round() as usize
    }

    /// Total sample count of the generated recording.
    pub fn total_samples(&self) -> usize {
        self.num_repetitions * self.num_classes * (self.movement_samples() + self.rest_samples())
    }
}

/// Standard normal source with a fixed draw order (Box-Muller over ChaCha8).
struct NormalSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalSource {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn next(&mut self) -> f64 {
        if let Some(v) = self.spare.take() {
            return v;
        }
        // u1 in (0, 1] so the log never sees zero.
        let u1: f64 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic value in [0, 1) keyed by (class, channel, salt).
fn profile_unit(class: usize, channel: usize, salt: u64) -> f64 {
    let key = (class as u64) << 24 | (channel as u64) << 8 | salt;
    (splitmix64(key) >> 11) as f64 / (1u64 << 53) as f64
}

/// Per-channel noise amplitude of class `k` (1-based).
fn class_amplitude(class: usize, channel: usize) -> f64 {
    0.3 + 1.7 * profile_unit(class, channel, 0)
}

/// Per-channel first-order autocorrelation of class `k`. Classes differ
/// in temporal structure as well as amplitude, so rate features (zero
/// crossings, slope sign changes, waveform length) carry class
/// information too.
fn class_autocorrelation(class: usize, channel: usize) -> f64 {
    0.05 + 0.85 * profile_unit(class, channel, 1)
}

/// Generate a deterministic synthetic recording. Equal specs produce equal
/// recordings across runs and thread counts.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Recording> {
    spec.validate()?;
    let move_len = spec.movement_samples();
    let rest_len = spec.rest_samples();
    let total = spec.total_samples();
    let n_ch = spec.num_channels;

    let mut channels = vec![Vec::with_capacity(total); n_ch];
    let mut stimulus = Vec::with_capacity(total);
    let mut repetition = Vec::with_capacity(total);
    let mut normals = NormalSource::new(spec.seed);
    // per-channel AR(1) state, reseeded at every block start
    let mut state = vec![0.0f64; n_ch];

    let mut push_block = |len: usize,
                          label: u32,
                          rep: u32,
                          amps: &[f64],
                          rhos: &[f64],
                          channels: &mut Vec<Vec<f64>>,
                          stimulus: &mut Vec<u32>,
                          repetition: &mut Vec<u32>,
                          normals: &mut NormalSource| {
        for x in state.iter_mut() {
            *x = normals.next();
        }
        for _ in 0..len {
            for c in 0..n_ch {
                // unit-variance AR(1): stationary from the first sample
                state[c] = rhos[c] * state[c] + (1.0 - rhos[c] * rhos[c]).sqrt() * normals.next();
                let mut v = amps[c] * state[c];
                if spec.noise_level > 0.0 {
                    v += spec.noise_level * normals.next();
                }
                channels[c].push(v);
            }
            stimulus.push(label);
            repetition.push(rep);
        }
    };

    let rest_amps = vec![REST_AMPLITUDE; n_ch];
    let rest_rhos = vec![0.0; n_ch];
    for rep in 1..=spec.num_repetitions {
        for class in 1..=spec.num_classes {
            let amps: Vec<f64> = (0..n_ch).map(|c| class_amplitude(class, c)).collect();
            let rhos: Vec<f64> = (0..n_ch).map(|c| class_autocorrelation(class, c)).collect();
            push_block(
                move_len,
                class as u32,
                rep as u32,
                &amps,
                &rhos,
                &mut channels,
                &mut stimulus,
                &mut repetition,
                &mut normals,
            );
            push_block(
                rest_len,
                0,
                0,
                &rest_amps,
                &rest_rhos,
                &mut channels,
                &mut stimulus,
                &mut repetition,
                &mut normals,
            );
        }
    }

    Recording::new(
        1,
        "synthetic",
        spec.sample_rate_hz,
        channels,
        stimulus,
        repetition,
    )
}

/// Load a recording from its canonical CSV form.
///
/// `expected_channels`, when given, is checked against the header. The
/// subject id defaults to 1 and the sample rate to 2000 Hz; adjust with
/// [`Recording::with_subject`] / [`Recording::with_sample_rate`].
pub fn load_recording(
    path: impl AsRef<Path>,
    expected_channels: Option<usize>,
) -> Result<Recording> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    let tag = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "recording".into());
    read_recording(BufReader::new(file), expected_channels, tag)
}

/// Parse the canonical CSV format from any reader.
pub fn read_recording(
    reader: impl BufRead,
    expected_channels: Option<usize>,
    source_tag: impl Into<String>,
) -> Result<Recording> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(Error::EmptyInput("file has no header line".into())),
    };
    let header = header.trim_end_matches('\r');
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 4 || cols[0] != "sample_index" {
        return Err(Error::Format {
            row: 1,
            reason: format!(
                "header must be `sample_index,ch1,...,chC,stimulus,repetition`, got `{header}`"
            ),
        });
    }
    let n_ch = cols.len() - 3;
    for (i, col) in cols[1..=n_ch].iter().enumerate() {
        let want = format!("ch{}", i + 1);
        if *col != want {
            return Err(Error::Format {
                row: 1,
                reason: format!("expected column `{want}`, got `{col}`"),
            });
        }
    }
    if cols[n_ch + 1] != "stimulus" || cols[n_ch + 2] != "repetition" {
        return Err(Error::Format {
            row: 1,
            reason: "last two columns must be `stimulus,repetition`".into(),
        });
    }
    if let Some(expected) = expected_channels {
        if n_ch != expected {
            return Err(Error::ChannelCount {
                expected,
                found: n_ch,
            });
        }
    }

    let mut channels: Vec<Vec<f64>> = vec![Vec::new(); n_ch];
    let mut stimulus = Vec::new();
    let mut repetition = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2; // 1-based file line
        let line = line?;
        let line = line.trim_end_matches('\r');
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n_ch + 3 {
            return Err(Error::Format {
                row,
                reason: format!("expected {} fields, found {}", n_ch + 3, fields.len()),
            });
        }
        let idx: u64 = fields[0].parse().map_err(|e| Error::Parse {
            row,
            column: "sample_index".into(),
            reason: format!("{e}"),
        })?;
        if idx != i as u64 {
            return Err(Error::Format {
                row,
                reason: format!("sample_index must increase by 1 from 0; expected {i}, got {idx}"),
            });
        }
        for (c, field) in fields[1..=n_ch].iter().enumerate() {
            let v: f64 = field.parse().map_err(|e| Error::Parse {
                row,
                column: format!("ch{}", c + 1),
                reason: format!("{e}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: format!("ch{}", c + 1),
                    reason: format!("voltage must be finite, got {field}"),
                });
            }
            channels[c].push(v);
        }
        stimulus.push(fields[n_ch + 1].parse().map_err(|e| Error::Parse {
            row,
            column: "stimulus".into(),
            reason: format!("{e}"),
        })?);
        repetition.push(fields[n_ch + 2].parse().map_err(|e| Error::Parse {
            row,
            column: "repetition".into(),
            reason: format!("{e}"),
        })?);
    }
    if stimulus.is_empty() {
        return Err(Error::EmptyInput("recording has no data rows".into()));
    }
    Recording::new(
        1,
        source_tag,
        DEFAULT_SAMPLE_RATE_HZ,
        channels,
        stimulus,
        repetition,
    )
}

/// Write a recording in its canonical CSV form.
pub fn write_recording(recording: &Recording, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_recording_to(recording, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_recording_to(recording: &Recording, w: &mut impl Write) -> Result<()> {
    write!(w, "sample_index")?;
    for c in 0..recording.num_channels() {
        write!(w, ",ch{}", c + 1)?;
    }
    writeln!(w, ",stimulus,repetition")?;
    for i in 0..recording.len() {
        write!(w, "{i}")?;
        for c in 0..recording.num_channels() {
            write!(w, ",{}", recording.channel(c)[i])?;
        }
        writeln!(
            w,
            ",{},{}",
            recording.stimulus()[i],
            recording.repetition()[i]
        )?;
    }
    Ok(())
}

/// Which repetitions feed training and which feed testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub train_repetitions: BTreeSet<u32>,
    pub test_repetitions: BTreeSet<u32>,
}

impl Default for SplitSpec {
    /// The conventional {1,3,4,6} / {2,5} repetition split.
    fn default() -> Self {
        Self {
            train_repetitions: [1, 3, 4, 6].into_iter().collect(),
            test_repetitions: [2, 5].into_iter().collect(),
        }
    }
}

impl SplitSpec {
    pub fn new(train: impl IntoIterator<Item = u32>, test: impl IntoIterator<Item = u32>) -> Self {
        Self {
            train_repetitions: train.into_iter().collect(),
            test_repetitions: test.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.train_repetitions.is_empty() || self.test_repetitions.is_empty() {
            return Err(Error::InvalidSpec {
                what: "split",
                reason: "train and test repetition sets must both be nonempty".into(),
            });
        }
        let overlap: Vec<u32> = self
            .train_repetitions
            .intersection(&self.test_repetitions)
            .copied()
            .collect();
        if !overlap.is_empty() {
            return Err(Error::InvalidSpec {
                what: "split",
                reason: format!("train and test repetitions overlap: {overlap:?}"),
            });
        }
        Ok(())
    }
}

/// Partition feature rows by their repetition index.
///
/// Rows whose repetition is in neither set are dropped; row order is
/// preserved within each part. Every requested repetition must actually
/// occur in the data.
pub fn split_by_repetition(
    matrix: &FeatureMatrix,
    split: &SplitSpec,
) -> Result<(FeatureMatrix, FeatureMatrix)> {
    split.validate()?;
    let observed: BTreeSet<u32> = matrix.repetitions().iter().copied().collect();
    for &rep in split.train_repetitions.union(&split.test_repetitions) {
        if !observed.contains(&rep) {
            return Err(Error::Split(format!(
                "repetition {rep} does not occur in the data (observed: {observed:?})"
            )));
        }
    }
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (i, rep) in matrix.repetitions().iter().enumerate() {
        if split.train_repetitions.contains(rep) {
            train_idx.push(i);
        } else if split.test_repetitions.contains(rep) {
            test_idx.push(i);
        }
    }
    if train_idx.is_empty() {
        return Err(Error::Split("no rows left for training".into()));
    }
    if test_idx.is_empty() {
        return Err(Error::Split("no rows left for testing".into()));
    }
    Ok((
        matrix.select_rows(&train_idx),
        matrix.select_rows(&test_idx),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{ColumnMeta, FeatureKind};

    fn tiny_csv() -> String {
        let mut s = String::from("sample_index");
        for c in 1..=12 {
            s.push_str(&format!(",ch{c}"));
        }
        s.push_str(",stimulus,repetition\n");
        for i in 0..3 {
            s.push_str(&format!("{i}"));
            for c in 0..12 {
                s.push_str(&format!(",{}", 0.25 * (i as f64) + c as f64));
            }
            let (st, rep) = if i == 0 { (0, 0) } else { (1, 1) };
            s.push_str(&format!(",{st},{rep}\n"));
        }
        s
    }

    #[test]
    fn loads_three_row_file() {
        let rec = read_recording(tiny_csv().as_bytes(), Some(12), "t").unwrap();
        assert_eq!(rec.len(), 3);
        assert_eq!(rec.num_channels(), 12);
        assert_eq!(rec.stimulus(), &[0, 1, 1]);
        assert_eq!(rec.repetition(), &[0, 1, 1]);
        assert_eq!(rec.channel(3)[2], 0.5 + 3.0);
    }

    #[test]
    fn channel_count_mismatch_is_reported() {
        let mut s = String::from("sample_index");
        for c in 1..=11 {
            s.push_str(&format!(",ch{c}"));
        }
        s.push_str(",stimulus,repetition\n0");
        for _ in 0..11 {
            s.push_str(",0.0");
        }
        s.push_str(",0,0\n");
        let err = read_recording(s.as_bytes(), Some(12), "t").unwrap_err();
        assert!(matches!(
            err,
            Error::ChannelCount {
                expected: 12,
                found: 11
            }
        ));
    }

    #[test]
    fn bad_voltage_names_row_and_column() {
        let s = "sample_index,ch1,stimulus,repetition\n0,1.0,0,0\n1,oops,1,1\n";
        let err = read_recording(s.as_bytes(), None, "t").unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 3);
                assert_eq!(column, "ch1");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_monotone_index_is_a_format_error() {
        let s = "sample_index,ch1,stimulus,repetition\n0,1.0,0,0\n5,1.0,0,0\n";
        let err = read_recording(s.as_bytes(), None, "t").unwrap_err();
        assert!(matches!(err, Error::Format { row: 3, .. }));
    }

    #[test]
    fn missing_field_is_a_format_error() {
        let s = "sample_index,ch1,stimulus,repetition\n0,1.0,0\n";
        let err = read_recording(s.as_bytes(), None, "t").unwrap_err();
        assert!(matches!(err, Error::Format { row: 2, .. }));
    }

    #[test]
    fn synthetic_duration_arithmetic() {
        let spec = SyntheticSpec {
            num_classes: 2,
            num_repetitions: 1,
            movement_duration_s: 1.0,
            rest_duration_s: 1.0,
            ..Default::default()
        };
        let rec = generate_synthetic(&spec).unwrap();
        assert_eq!(rec.len(), 2 * (2000 + 2000));
    }

    #[test]
    fn synthetic_default_length() {
        let spec = SyntheticSpec::default();
        assert_eq!(spec.total_samples(), 6 * 17 * (5 + 3) * 2000);
    }

    #[test]
    fn synthetic_is_deterministic() {
        let spec = SyntheticSpec {
            num_classes: 3,
            num_repetitions: 2,
            movement_duration_s: 0.05,
            rest_duration_s: 0.03,
            seed: 42,
            noise_level: 0.1,
            ..Default::default()
        };
        let a = generate_synthetic(&spec).unwrap();
        let b = generate_synthetic(&spec).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&SyntheticSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn synthetic_label_accounting() {
        let spec = SyntheticSpec {
            num_classes: 4,
            num_repetitions: 3,
            movement_duration_s: 0.1,
            rest_duration_s: 0.05,
            seed: 7,
            ..Default::default()
        };
        let rec = generate_synthetic(&spec).unwrap();
        let per_class = 3 * (0.1 * 2000.0) as usize;
        for k in 1..=4u32 {
            let count = rec.stimulus().iter().filter(|&&s| s == k).count();
            assert_eq!(count, per_class, "class {k}");
        }
        // repetition is 0 wherever stimulus is 0
        for (s, r) in rec.stimulus().iter().zip(rec.repetition()) {
            if *s == 0 {
                assert_eq!(*r, 0);
            }
        }
    }

    #[test]
    fn amplitude_profiles_are_pairwise_distinct_and_separated() {
        let k_max = 17;
        for a in 1..=k_max {
            for b in (a + 1)..=k_max {
                let gap: f64 = (0..12)
                    .map(|c| (class_amplitude(a, c) - class_amplitude(b, c)).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(gap > 0.3, "classes {a} and {b} are only {gap} apart");
            }
        }
    }

    fn matrix_with_reps(reps: &[u32]) -> FeatureMatrix {
        let meta = vec![ColumnMeta {
            channel: 0,
            kind: FeatureKind::Mav,
            bin: None,
        }];
        let rows: Vec<Vec<f64>> = reps.iter().map(|&r| vec![r as f64]).collect();
        let labels = vec![1; reps.len()];
        FeatureMatrix::from_rows(meta, rows, labels, reps.to_vec(), 1).unwrap()
    }

    #[test]
    fn split_filters_by_repetition() {
        let m = matrix_with_reps(&[1, 2, 3, 4, 5, 6]);
        let (train, test) = split_by_repetition(&m, &SplitSpec::default()).unwrap();
        assert_eq!(train.n_rows(), 4);
        assert_eq!(test.n_rows(), 2);
        assert_eq!(train.repetitions(), &[1, 3, 4, 6]);
        assert_eq!(test.repetitions(), &[2, 5]);
    }

    #[test]
    fn overlapping_split_is_rejected() {
        let m = matrix_with_reps(&[1, 2]);
        let split = SplitSpec::new([1], [1]);
        let err = split_by_repetition(&m, &split).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { what: "split", .. }));
    }

    #[test]
    fn unobserved_repetition_is_rejected() {
        let m = matrix_with_reps(&[1, 2]);
        let split = SplitSpec::new([1], [5]);
        let err = split_by_repetition(&m, &split).unwrap_err();
        assert!(matches!(err, Error::Split(_)));
    }

    #[test]
    fn split_counts_on_uniform_rows() {
        let reps: Vec<u32> = (0..600).map(|i| (i % 6) as u32 + 1).collect();
        let m = matrix_with_reps(&reps);
        let (train, test) = split_by_repetition(&m, &SplitSpec::default()).unwrap();
        assert_eq!(train.n_rows(), 400);
        assert_eq!(test.n_rows(), 200);
    }
}
