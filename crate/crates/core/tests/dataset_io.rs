//! Full-scale dataset round trips.

use emgpr_core::dataset::{generate_synthetic, load_recording, write_recording, SyntheticSpec};

#[test]
fn million_row_export_reloads_bit_identically() {
    // 10 classes x 5 repetitions x (6s + 4s) x 2 kHz = 1,000,000 samples
    let spec = SyntheticSpec {
        num_classes: 10,
        num_repetitions: 5,
        movement_duration_s: 6.0,
        rest_duration_s: 4.0,
        seed: 31,
        noise_level: 0.05,
        ..Default::default()
    };
    assert_eq!(spec.total_samples(), 1_000_000);
    let rec = generate_synthetic(&spec).unwrap();
    assert_eq!(rec.len(), 1_000_000);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("million.csv");
    write_recording(&rec, &path).unwrap();
    let reloaded = load_recording(&path, Some(12)).unwrap();
    // load defaults match the generator's subject/rate; tags differ by design
    assert_eq!(rec.sample_rate_hz(), reloaded.sample_rate_hz());
    assert_eq!(rec.subject_id, reloaded.subject_id);
    assert_eq!(rec.stimulus(), reloaded.stimulus());
    assert_eq!(rec.repetition(), reloaded.repetition());
    for c in 0..rec.num_channels() {
        assert_eq!(rec.channel(c), reloaded.channel(c), "channel {c}");
    }
}

#[test]
fn paper_scale_synthetic_has_the_expected_length() {
    let spec = SyntheticSpec::default();
    let rec = generate_synthetic(&spec).unwrap();
    assert_eq!(rec.len(), 1_632_000);
    assert_eq!(rec.num_channels(), 12);
    assert_eq!(rec.max_stimulus(), 17);
    assert_eq!(rec.max_repetition(), 6);
}
