//! Analysis-window segmentation and window aggregation.
//!
//! A recording is cut into fixed-length windows, either overlapped
//! (starts advance by an increment smaller than the window) or adjacent
//! (each window starts where the previous one ends). Each window is
//! labeled by a configurable policy. The aggregation step averages
//! disjoint groups of `n` consecutive windows element-wise.

use crate::dataset::Recording;
use crate::error::{Error, Result};

/// How consecutive windows are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    Overlapped,
    Adjacent,
}

impl WindowMode {
    pub fn name(self) -> &'static str {
        match self {
            WindowMode::Overlapped => "overlapped",
            WindowMode::Adjacent => "adjacent",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "overlapped" => Some(WindowMode::Overlapped),
            "adjacent" => Some(WindowMode::Adjacent),
            _ => None,
        }
    }
}

/// How a window spanning several stimulus values gets its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelPolicy {
    /// Most frequent stimulus; ties break toward the lower label value.
    Majority,
    /// Drop any window whose samples carry more than one stimulus value.
    PureOnly,
    /// Stimulus at the window's last sample.
    Endpoint,
}

impl LabelPolicy {
    pub fn name(self) -> &'static str {
        match self {
            LabelPolicy::Majority => "majority",
            LabelPolicy::PureOnly => "pure-only",
            LabelPolicy::Endpoint => "endpoint",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "majority" => Some(LabelPolicy::Majority),
            "pure-only" | "pure_only" | "pureonly" => Some(LabelPolicy::PureOnly),
            "endpoint" => Some(LabelPolicy::Endpoint),
            _ => None,
        }
    }
}

/// Analysis-window parameters. Durations are in milliseconds; sample
/// counts are floored from `ms * rate / 1000` when a recording's rate is
/// applied.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub length_ms: f64,
    pub increment_ms: f64,
    pub mode: WindowMode,
    pub label_policy: LabelPolicy,
    /// Hard ceiling on the window length; classification delay above it
    /// becomes noticeable to the user.
    pub latency_limit_ms: Option<f64>,
}

pub const DEFAULT_LATENCY_LIMIT_MS: f64 = 300.0;

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            length_ms: 256.0,
            increment_ms: 10.0,
            mode: WindowMode::Overlapped,
            label_policy: LabelPolicy::Majority,
            latency_limit_ms: Some(DEFAULT_LATENCY_LIMIT_MS),
        }
    }
}

impl WindowSpec {
    /// Window length in samples at the given rate.
    pub fn window_samples(&self, sample_rate_hz: f64) -> usize {
        (self.length_ms * sample_rate_hz / 1000.0).floor() as usize
    }

    /// Stride between window starts in samples at the given rate.
    pub fn stride_samples(&self, sample_rate_hz: f64) -> usize {
        match self.mode {
            WindowMode::Overlapped => {
                (self.increment_ms * sample_rate_hz / 1000.0).floor() as usize
            }
            WindowMode::Adjacent => self.window_samples(sample_rate_hz),
        }
    }

    pub fn validate(&self, sample_rate_hz: f64) -> Result<()> {
        let fail = |reason: String| Error::InvalidSpec {
            what: "window spec",
            reason,
        };
        if !(self.length_ms.is_finite() && self.length_ms > 0.0) {
            return Err(fail(format!(
                "length must be positive, got {}",
                self.length_ms
            )));
        }
        if !(self.increment_ms.is_finite() && self.increment_ms > 0.0) {
            return Err(fail(format!(
                "increment must be positive, got {}",
                self.increment_ms
            )));
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(fail(format!(
                "sample rate must be positive, got {sample_rate_hz}"
            )));
        }
        let w = self.window_samples(sample_rate_hz);
        if w < 2 {
            return Err(fail(format!(
                "window of {} ms at {} Hz is {} samples; need at least 2",
                self.length_ms, sample_rate_hz, w
            )));
        }
        if self.mode == WindowMode::Overlapped {
            let i = self.stride_samples(sample_rate_hz);
            if i < 1 {
                return Err(fail(format!(
                    "increment of {} ms at {} Hz is below one sample",
                    self.increment_ms, sample_rate_hz
                )));
            }
            if i > w {
                return Err(fail(format!(
                    "overlapped mode requires increment <= window ({i} > {w} samples)"
                )));
            }
        }
        if let Some(limit) = self.latency_limit_ms {
            if self.length_ms > limit {
                return Err(fail(format!(
                    "window of {} ms exceeds the {} ms latency limit",
                    self.length_ms, limit
                )));
            }
        }
        Ok(())
    }
}

/// One extracted analysis window: `C x W` samples plus its resolved label.
///
/// `window_index` is the window's position in the full start enumeration,
/// so indices stay comparable when a policy drops windows.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub window_index: usize,
    pub start_sample: usize,
    pub label: u32,
    pub repetition: u32,
    n_channels: usize,
    window_len: usize,
    /// Channel-major: samples[c * window_len .. (c + 1) * window_len].
    samples: Vec<f64>,
}

impl Segment {
    pub fn from_samples(
        window_index: usize,
        start_sample: usize,
        n_channels: usize,
        samples: Vec<f64>,
        label: u32,
        repetition: u32,
    ) -> Result<Self> {
        if n_channels == 0 || samples.is_empty() || !samples.len().is_multiple_of(n_channels) {
            return Err(Error::Shape(format!(
                "{} samples do not form whole channels of {n_channels}",
                samples.len()
            )));
        }
        Ok(Self {
            window_index,
            start_sample,
            label,
            repetition,
            n_channels,
            window_len: samples.len() / n_channels,
            samples,
        })
    }

    pub fn n_channels(&self) -> usize {
        self.n_channels
    }

    pub fn window_len(&self) -> usize {
        self.window_len
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.samples[c * self.window_len..(c + 1) * self.window_len]
    }

    fn samples(&self) -> &[f64] {
        &self.samples
    }
}

/// Disjoint-group averaging parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AggregationSpec {
    pub n: usize,
}

impl Default for AggregationSpec {
    fn default() -> Self {
        Self { n: 5 }
    }
}

impl AggregationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidSpec {
                what: "aggregation spec",
                reason: "group size must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// The two baseline windowing regimes plus the proposed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Technique {
    /// 200 ms / 10 ms overlapped windows, no aggregation.
    Wa,
    /// 256 ms / 10 ms overlapped windows, mean of 5 consecutive windows.
    Ag,
    /// 256 ms / 10 ms overlapped windows, no aggregation.
    Proposed,
}

impl Technique {
    pub const ALL: [Technique; 3] = [Technique::Wa, Technique::Ag, Technique::Proposed];

    pub fn name(self) -> &'static str {
        match self {
            Technique::Wa => "WA",
            Technique::Ag => "AG",
            Technique::Proposed => "PROPOSED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "WA" => Some(Technique::Wa),
            "AG" => Some(Technique::Ag),
            "PROPOSED" => Some(Technique::Proposed),
            _ => None,
        }
    }
}

/// Window and aggregation parameters of a named technique, validated at
/// the given sampling rate.
pub fn make_baseline_spec(
    technique: Technique,
    sample_rate_hz: f64,
) -> Result<(WindowSpec, Option<AggregationSpec>)> {
    let (length_ms, aggregation) = match technique {
        Technique::Wa => (200.0, None),
        Technique::Ag => (256.0, Some(AggregationSpec::default())),
        Technique::Proposed => (256.0, None),
    };
    let spec = WindowSpec {
        length_ms,
        ..Default::default()
    };
    spec.validate(sample_rate_hz)?;
    Ok((spec, aggregation))
}

/// Streaming segmenter. Yields one owned [`Segment`] at a time so callers
/// can featurize long recordings without holding every window in memory.
pub struct SegmentIter<'a> {
    recording: &'a Recording,
    window: usize,
    stride: usize,
    policy: LabelPolicy,
    next_index: usize,
    stim_counts: Vec<u32>,
    rep_counts: Vec<u32>,
}

impl<'a> SegmentIter<'a> {
    fn new(recording: &'a Recording, spec: &WindowSpec) -> Result<Self> {
        spec.validate(recording.sample_rate_hz())?;
        let window = spec.window_samples(recording.sample_rate_hz());
        let stride = spec.stride_samples(recording.sample_rate_hz());
        if window > recording.len() {
            return Err(Error::InputTooShort {
                needed: window,
                have: recording.len(),
            });
        }
        Ok(Self {
            recording,
            window,
            stride,
            policy: spec.label_policy,
            next_index: 0,
            stim_counts: vec![0; recording.max_stimulus() as usize + 1],
            rep_counts: vec![0; recording.max_repetition() as usize + 1],
        })
    }

    /// Window length in samples.
    pub fn window_len(&self) -> usize {
        self.window
    }

    /// Number of window positions (before any policy drops).
    pub fn total_positions(&self) -> usize {
        (self.recording.len() - self.window) / self.stride + 1
    }

    /// Resolve (label, repetition) for the window at `start`, or `None`
    /// when the policy drops it.
    fn resolve_label(&mut self, start: usize) -> Option<(u32, u32)> {
        let stim = &self.recording.stimulus()[start..start + self.window];
        let reps = &self.recording.repetition()[start..start + self.window];
        match self.policy {
            LabelPolicy::Endpoint => Some((stim[self.window - 1], reps[self.window - 1])),
            LabelPolicy::PureOnly => {
                let first = stim[0];
                if stim.iter().any(|&s| s != first) {
                    return None;
                }
                Some((first, majority(reps, &mut self.rep_counts, |_| true)))
            }
            LabelPolicy::Majority => {
                let label = majority(stim, &mut self.stim_counts, |_| true);
                let rep = majority(reps, &mut self.rep_counts, |i| stim[i] == label);
                Some((label, rep))
            }
        }
    }
}

/// Most frequent value among `values[i]` with `keep(i)`; ties break toward
/// the lower value. `counts` is a reusable scratch buffer.
fn majority(values: &[u32], counts: &mut [u32], keep: impl Fn(usize) -> bool) -> u32 {
    counts.fill(0);
    for (i, &v) in values.iter().enumerate() {
        if keep(i) {
            counts[v as usize] += 1;
        }
    }
    let mut best = 0usize;
    let mut best_count = 0u32;
    for (v, &count) in counts.iter().enumerate() {
        if count > best_count {
            best = v;
            best_count = count;
        }
    }
    best as u32
}

impl Iterator for SegmentIter<'_> {
    type Item = Segment;

    fn next(&mut self) -> Option<Segment> {
        loop {
            let index = self.next_index;
            let start = index * self.stride;
            if start + self.window > self.recording.len() {
                return None;
            }
            self.next_index += 1;
            let Some((label, repetition)) = self.resolve_label(start) else {
                continue;
            };
            let n_ch = self.recording.num_channels();
            let mut samples = Vec::with_capacity(n_ch * self.window);
            for c in 0..n_ch {
                samples.extend_from_slice(&self.recording.channel(c)[start..start + self.window]);
            }
            return Some(Segment {
                window_index: index,
                start_sample: start,
                label,
                repetition,
                n_channels: n_ch,
                window_len: self.window,
                samples,
            });
        }
    }
}

/// Streaming equivalent of [`segment`].
pub fn segment_iter<'a>(recording: &'a Recording, spec: &WindowSpec) -> Result<SegmentIter<'a>> {
    SegmentIter::new(recording, spec)
}

/// Cut a recording into labeled analysis windows.
///
/// Overlapped windows start at `0, I, 2I, ...` giving
/// `floor((L - W) / I) + 1` positions; adjacent windows tile the signal
/// giving `floor(L / W)`. Under the pure-only policy mixed windows are
/// dropped, so the output may be shorter.
pub fn segment(recording: &Recording, spec: &WindowSpec) -> Result<Vec<Segment>> {
    Ok(segment_iter(recording, spec)?.collect())
}

fn mean_of_group(group: &[Segment], index: usize) -> Option<Segment> {
    let last = group.last().expect("group is nonempty");
    if group.iter().any(|s| s.label != last.label) {
        return None;
    }
    let mut samples = vec![0.0; last.samples().len()];
    for seg in group {
        for (acc, v) in samples.iter_mut().zip(seg.samples()) {
            *acc += v;
        }
    }
    let n = group.len() as f64;
    for v in &mut samples {
        *v /= n;
    }
    Some(Segment {
        window_index: index,
        start_sample: group[0].start_sample,
        label: last.label,
        repetition: last.repetition,
        n_channels: last.n_channels,
        window_len: last.window_len,
        samples,
    })
}

fn check_same_shape(a: &Segment, b: &Segment) -> Result<()> {
    if a.n_channels != b.n_channels || a.window_len != b.window_len {
        return Err(Error::Shape(format!(
            "segments disagree in shape: {}x{} vs {}x{}",
            a.n_channels, a.window_len, b.n_channels, b.window_len
        )));
    }
    Ok(())
}

/// Average disjoint consecutive groups of `n` segments element-wise.
///
/// The trailing remainder is dropped. A group whose labels disagree is
/// dropped: averaging across movements destroys the signal. The output
/// segment's label and repetition come from the group's last member, its
/// `window_index` is the group's position in the partition.
pub fn aggregate(segments: &[Segment], agg: &AggregationSpec) -> Result<Vec<Segment>> {
    agg.validate()?;
    let mut out = Vec::with_capacity(segments.len() / agg.n);
    for (t, group) in segments.chunks_exact(agg.n).enumerate() {
        for seg in &group[1..] {
            check_same_shape(&group[0], seg)?;
        }
        if let Some(seg) = mean_of_group(group, t) {
            out.push(seg);
        }
    }
    Ok(out)
}

/// Sliding variant: output `t` is the mean of segments `t..t+n`.
///
/// Kept separate from [`aggregate`]; the disjoint reading is the default.
pub fn aggregate_sliding(segments: &[Segment], agg: &AggregationSpec) -> Result<Vec<Segment>> {
    agg.validate()?;
    if segments.len() < agg.n {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(segments.len() - agg.n + 1);
    for (t, group) in segments.windows(agg.n).enumerate() {
        for seg in &group[1..] {
            check_same_shape(&group[0], seg)?;
        }
        if let Some(seg) = mean_of_group(group, t) {
            out.push(seg);
        }
    }
    Ok(out)
}

/// Streaming aggregation over any segment source. Yields `Err` on the
/// first shape mismatch.
pub struct AggregateIter<I: Iterator<Item = Segment>> {
    inner: I,
    n: usize,
    sliding: bool,
    buffer: Vec<Segment>,
    index: usize,
}

impl<I: Iterator<Item = Segment>> AggregateIter<I> {
    pub fn new(inner: I, agg: &AggregationSpec, sliding: bool) -> Result<Self> {
        agg.validate()?;
        Ok(Self {
            inner,
            n: agg.n,
            sliding,
            buffer: Vec::with_capacity(agg.n),
            index: 0,
        })
    }
}

impl<I: Iterator<Item = Segment>> Iterator for AggregateIter<I> {
    type Item = Result<Segment>;

    fn next(&mut self) -> Option<Result<Segment>> {
        loop {
            while self.buffer.len() < self.n {
                let seg = self.inner.next()?;
                if let Some(first) = self.buffer.first() {
                    if let Err(e) = check_same_shape(first, &seg) {
                        return Some(Err(e));
                    }
                }
                self.buffer.push(seg);
            }
            let index = self.index;
            self.index += 1;
            let mean = mean_of_group(&self.buffer, index);
            if self.sliding {
                self.buffer.remove(0);
            } else {
                self.buffer.clear();
            }
            match mean {
                Some(seg) => return Some(Ok(seg)),
                None => continue,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{generate_synthetic, Recording, SyntheticSpec};

    fn recording_with(
        stimulus: Vec<u32>,
        repetition: Vec<u32>,
        n_ch: usize,
        rate: f64,
    ) -> Recording {
        let len = stimulus.len();
        let channels: Vec<Vec<f64>> = (0..n_ch)
            .map(|c| (0..len).map(|i| (i * (c + 1)) as f64).collect())
            .collect();
        Recording::new(1, "test", rate, channels, stimulus, repetition).unwrap()
    }

    fn spec(length_ms: f64, increment_ms: f64) -> WindowSpec {
        WindowSpec {
            length_ms,
            increment_ms,
            ..Default::default()
        }
    }

    #[test]
    fn overlapped_window_count() {
        // 256 ms / 10 ms at 2 kHz over 1000 samples
        let rec = recording_with(vec![1; 1000], vec![1; 1000], 2, 2000.0);
        let s = spec(256.0, 10.0);
        assert_eq!(s.window_samples(2000.0), 512);
        assert_eq!(s.stride_samples(2000.0), 20);
        let segs = segment(&rec, &s).unwrap();
        assert_eq!(segs.len(), (1000 - 512) / 20 + 1);
        assert_eq!(segs.len(), 25);
        for (i, seg) in segs.iter().enumerate() {
            assert_eq!(seg.start_sample, i * 20);
            assert_eq!(seg.window_index, i);
        }
    }

    #[test]
    fn adjacent_windows_tile() {
        let rec = recording_with(vec![1; 1024], vec![1; 1024], 1, 2000.0);
        let s = WindowSpec {
            length_ms: 256.0,
            mode: WindowMode::Adjacent,
            ..Default::default()
        };
        let segs = segment(&rec, &s).unwrap();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].start_sample, 0);
        assert_eq!(segs[1].start_sample, 512);
    }

    #[test]
    fn too_short_recording_is_an_error() {
        let rec = recording_with(vec![1; 100], vec![1; 100], 1, 2000.0);
        let err = segment(&rec, &spec(256.0, 10.0)).unwrap_err();
        assert!(matches!(err, Error::InputTooShort { needed: 512, .. }));
    }

    #[test]
    fn latency_limit_is_enforced() {
        let s = WindowSpec {
            length_ms: 400.0,
            ..Default::default()
        };
        let err = s.validate(2000.0).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { .. }));
        let unlimited = WindowSpec {
            length_ms: 400.0,
            latency_limit_ms: None,
            ..Default::default()
        };
        unlimited.validate(2000.0).unwrap();
    }

    #[test]
    fn pure_only_drops_mixed_windows() {
        // stimulus switches mid-stream
        let mut stim = vec![1u32; 50];
        stim.extend(vec![2u32; 50]);
        let rec = recording_with(stim, vec![1; 100], 1, 1000.0);
        let s = WindowSpec {
            length_ms: 20.0,
            increment_ms: 10.0,
            label_policy: LabelPolicy::PureOnly,
            ..Default::default()
        };
        let segs = segment(&rec, &s).unwrap();
        assert!(!segs.is_empty());
        for seg in &segs {
            let stim = &rec.stimulus()[seg.start_sample..seg.start_sample + seg.window_len()];
            assert!(stim.iter().all(|&v| v == stim[0]));
        }
    }

    #[test]
    fn majority_ties_break_toward_lower_label() {
        // exactly half label 1, half label 2
        let mut stim = vec![1u32; 10];
        stim.extend(vec![2u32; 10]);
        let rec = recording_with(stim, vec![1; 20], 1, 1000.0);
        let s = WindowSpec {
            length_ms: 20.0,
            increment_ms: 20.0,
            ..Default::default()
        };
        let segs = segment(&rec, &s).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].label, 1);
    }

    #[test]
    fn endpoint_policy_uses_last_sample() {
        let mut stim = vec![1u32; 15];
        stim.extend(vec![2u32; 5]);
        let mut reps = vec![1u32; 15];
        reps.extend(vec![3u32; 5]);
        let rec = recording_with(stim, reps, 1, 1000.0);
        let s = WindowSpec {
            length_ms: 20.0,
            increment_ms: 20.0,
            label_policy: LabelPolicy::Endpoint,
            ..Default::default()
        };
        let segs = segment(&rec, &s).unwrap();
        assert_eq!(segs[0].label, 2);
        assert_eq!(segs[0].repetition, 3);
    }

    fn seg_of(values: &[f64], label: u32) -> Segment {
        Segment::from_samples(0, 0, 1, values.to_vec(), label, 1).unwrap()
    }

    #[test]
    fn aggregate_means_disjoint_groups() {
        let segs: Vec<Segment> = (1..=5).map(|v| seg_of(&[v as f64], 1)).collect();
        let out = aggregate(&segs, &AggregationSpec { n: 5 }).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].channel(0), &[3.0]);
    }

    #[test]
    fn aggregate_drops_remainder() {
        let segs: Vec<Segment> = (0..12).map(|v| seg_of(&[v as f64, 0.0], 1)).collect();
        let out = aggregate(&segs, &AggregationSpec { n: 5 }).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn aggregate_of_identical_segments_is_identity() {
        let seg = seg_of(&[1.25, -3.5, 0.0625], 4);
        let segs = vec![seg.clone(); 5];
        let out = aggregate(&segs, &AggregationSpec { n: 5 }).unwrap();
        assert_eq!(out[0].channel(0), seg.channel(0));
        assert_eq!(out[0].label, 4);
    }

    #[test]
    fn aggregate_n1_is_identity() {
        let segs: Vec<Segment> = (0..4)
            .map(|v| seg_of(&[v as f64 * 0.3], v as u32))
            .collect();
        let out = aggregate(&segs, &AggregationSpec { n: 1 }).unwrap();
        assert_eq!(out.len(), segs.len());
        for (a, b) in out.iter().zip(&segs) {
            assert_eq!(a.channel(0), b.channel(0));
            assert_eq!(a.label, b.label);
        }
    }

    #[test]
    fn aggregate_drops_mixed_label_groups() {
        let mut segs: Vec<Segment> = (0..5).map(|v| seg_of(&[v as f64], 1)).collect();
        segs.extend((0..5).map(|v| seg_of(&[v as f64], if v < 2 { 1 } else { 2 })));
        let out = aggregate(&segs, &AggregationSpec { n: 5 }).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].window_index, 0);
    }

    #[test]
    fn aggregate_rejects_mismatched_shapes() {
        let segs = vec![seg_of(&[1.0, 2.0], 1), seg_of(&[1.0], 1)];
        let err = aggregate(&segs, &AggregationSpec { n: 2 }).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn sliding_aggregation_counts() {
        let segs: Vec<Segment> = (0..7).map(|v| seg_of(&[v as f64], 1)).collect();
        let out = aggregate_sliding(&segs, &AggregationSpec { n: 5 }).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0].channel(0), &[2.0]);
        assert_eq!(out[1].channel(0), &[3.0]);
    }

    #[test]
    fn streaming_aggregation_matches_slice_version() {
        let spec = SyntheticSpec {
            num_classes: 2,
            num_repetitions: 2,
            movement_duration_s: 0.3,
            rest_duration_s: 0.1,
            num_channels: 3,
            sample_rate_hz: 1000.0,
            noise_level: 0.0,
            seed: 5,
        };
        let rec = generate_synthetic(&spec).unwrap();
        let wspec = WindowSpec {
            length_ms: 50.0,
            increment_ms: 10.0,
            ..Default::default()
        };
        let segs = segment(&rec, &wspec).unwrap();
        let agg = AggregationSpec { n: 5 };
        let direct = aggregate(&segs, &agg).unwrap();
        let streamed: Vec<Segment> =
            AggregateIter::new(segment_iter(&rec, &wspec).unwrap(), &agg, false)
                .unwrap()
                .map(|r| r.unwrap())
                .collect();
        assert_eq!(direct, streamed);
    }

    #[test]
    fn baseline_specs_match_published_parameters() {
        let (wa, agg) = make_baseline_spec(Technique::Wa, 2000.0).unwrap();
        assert_eq!(wa.window_samples(2000.0), 400);
        assert_eq!(wa.stride_samples(2000.0), 20);
        assert!(agg.is_none());

        let (ag, agg) = make_baseline_spec(Technique::Ag, 2000.0).unwrap();
        assert_eq!(ag.window_samples(2000.0), 512);
        assert_eq!(ag.stride_samples(2000.0), 20);
        assert_eq!(agg.unwrap().n, 5);

        let (prop, agg) = make_baseline_spec(Technique::Proposed, 2000.0).unwrap();
        assert_eq!(prop.window_samples(2000.0), 512);
        assert_eq!(prop.stride_samples(2000.0), 20);
        assert!(agg.is_none());
    }
}
