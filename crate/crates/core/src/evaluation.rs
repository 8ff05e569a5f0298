//! Accuracy, confusion matrices and grouped report summaries.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Top-1 classification accuracy in percent.
pub fn accuracy(predicted: &[u32], truth: &[u32]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::Shape(format!(
            "{} predictions vs {} truth labels",
            predicted.len(),
            truth.len()
        )));
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput("nothing to score".into()));
    }
    let matches = predicted.iter().zip(truth).filter(|(a, b)| a == b).count();
    Ok(100.0 * matches as f64 / predicted.len() as f64)
}

/// Row-truth, column-prediction count matrix over an ordered class list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    classes: Vec<u32>,
    /// K x K, row-major.
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    pub fn count(&self, truth_idx: usize, predicted_idx: usize) -> u64 {
        self.counts[truth_idx * self.classes.len() + predicted_idx]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.classes.len()).map(|i| self.count(i, i)).sum()
    }

    pub fn accuracy_pct(&self) -> f64 {
        100.0 * self.trace() as f64 / self.total() as f64
    }

    /// Diagonal share per class, as (class, percent). Classes with no
    /// truth rows report 0.
    pub fn per_class_accuracy(&self) -> Vec<(u32, f64)> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, &class)| {
                let row_total: u64 = (0..self.classes.len()).map(|j| self.count(i, j)).sum();
                let pct = if row_total == 0 {
                    0.0
                } else {
                    100.0 * self.count(i, i) as f64 / row_total as f64
                };
                (class, pct)
            })
            .collect()
    }
}

/// Tally predictions against truth over the given class list. Every label
/// that appears must be in `classes`.
pub fn confusion(predicted: &[u32], truth: &[u32], classes: &[u32]) -> Result<ConfusionMatrix> {
    if predicted.len() != truth.len() {
        return Err(Error::Shape(format!(
            "{} predictions vs {} truth labels",
            predicted.len(),
            truth.len()
        )));
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput("nothing to tally".into()));
    }
    let index: BTreeMap<u32, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    if index.len() != classes.len() {
        return Err(Error::Label("class list contains duplicates".into()));
    }
    let k = classes.len();
    let mut counts = vec![0u64; k * k];
    for (&p, &t) in predicted.iter().zip(truth) {
        let ti = *index
            .get(&t)
            .ok_or_else(|| Error::Label(format!("truth label {t} not in the class list")))?;
        let pi = *index
            .get(&p)
            .ok_or_else(|| Error::Label(format!("predicted label {p} not in the class list")))?;
        counts[ti * k + pi] += 1;
    }
    Ok(ConfusionMatrix {
        classes: classes.to_vec(),
        counts,
    })
}

/// One evaluated (subject, technique, config, classifier) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub subject_id: u32,
    pub technique: String,
    pub config: String,
    pub classifier: String,
    pub accuracy_pct: f64,
    pub per_class_accuracy: Vec<(u32, f64)>,
    pub confusion: ConfusionMatrix,
    pub n_train: usize,
    pub n_test: usize,
}

impl EvalReport {
    /// Build a report from predictions; the class list is the sorted
    /// union of truth and predicted labels, so the overall accuracy is
    /// exactly `100 * trace / total` of the confusion matrix.
    pub fn new(
        subject_id: u32,
        technique: impl Into<String>,
        config: impl Into<String>,
        classifier: impl Into<String>,
        predicted: &[u32],
        truth: &[u32],
        n_train: usize,
    ) -> Result<Self> {
        let mut classes: Vec<u32> = truth.iter().chain(predicted).copied().collect();
        classes.sort_unstable();
        classes.dedup();
        let confusion = confusion(predicted, truth, &classes)?;
        Ok(Self {
            subject_id,
            technique: technique.into(),
            config: config.into(),
            classifier: classifier.into(),
            accuracy_pct: confusion.accuracy_pct(),
            per_class_accuracy: confusion.per_class_accuracy(),
            confusion,
            n_train,
            n_test: truth.len(),
        })
    }
}

/// Mean accuracies over consecutive groups of subjects.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub group_size: usize,
    pub entries: Vec<GroupEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupEntry {
    pub first_subject: u32,
    pub last_subject: u32,
    pub n_subjects: usize,
    pub rows: Vec<GroupRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupRow {
    pub technique: String,
    pub config: String,
    pub classifier: String,
    pub mean_accuracy_pct: f64,
}

/// Average per-subject accuracies over consecutive groups of
/// `group_size` subjects (the last group may be short), keyed by
/// (technique, config, classifier).
pub fn group_average(reports: &[EvalReport], group_size: usize) -> Result<GroupSummary> {
    if reports.is_empty() {
        return Err(Error::EmptyInput("no reports to summarize".into()));
    }
    if group_size < 1 {
        return Err(Error::InvalidSpec {
            what: "group size",
            reason: "must be at least 1".into(),
        });
    }
    let mut subjects: Vec<u32> = reports.iter().map(|r| r.subject_id).collect();
    subjects.sort_unstable();
    subjects.dedup();

    let mut entries = Vec::new();
    for chunk in subjects.chunks(group_size) {
        let mut sums: BTreeMap<(String, String, String), (f64, usize)> = BTreeMap::new();
        for report in reports.iter().filter(|r| chunk.contains(&r.subject_id)) {
            let key = (
                report.technique.clone(),
                report.config.clone(),
                report.classifier.clone(),
            );
            let entry = sums.entry(key).or_insert((0.0, 0));
            entry.0 += report.accuracy_pct;
            entry.1 += 1;
        }
        let rows = sums
            .into_iter()
            .map(|((technique, config, classifier), (sum, count))| GroupRow {
                technique,
                config,
                classifier,
                mean_accuracy_pct: sum / count as f64,
            })
            .collect();
        entries.push(GroupEntry {
            first_subject: chunk[0],
            last_subject: *chunk.last().expect("chunk is nonempty"),
            n_subjects: chunk.len(),
            rows,
        });
    }
    Ok(GroupSummary {
        group_size,
        entries,
    })
}

/// Per-subject report CSV:
/// `subject,technique,config,classifier,accuracy_pct,n_train,n_test`.
pub fn write_report_csv(reports: &[EvalReport], path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_report_csv_to(reports, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_report_csv_to(reports: &[EvalReport], w: &mut impl Write) -> Result<()> {
    writeln!(
        w,
        "subject,technique,config,classifier,accuracy_pct,n_train,n_test"
    )?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.subject_id, r.technique, r.config, r.classifier, r.accuracy_pct, r.n_train, r.n_test
        )?;
    }
    Ok(())
}

/// Group-summary CSV mirroring the grouped-averages layout:
/// `subjects,technique,config,classifier,mean_accuracy_pct,n_subjects`.
pub fn write_summary_csv(summary: &GroupSummary, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_summary_csv_to(summary, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_summary_csv_to(summary: &GroupSummary, w: &mut impl Write) -> Result<()> {
    writeln!(
        w,
        "subjects,technique,config,classifier,mean_accuracy_pct,n_subjects"
    )?;
    for entry in &summary.entries {
        for row in &entry.rows {
            writeln!(
                w,
                "{}-{},{},{},{},{},{}",
                entry.first_subject,
                entry.last_subject,
                row.technique,
                row.config,
                row.classifier,
                row.mean_accuracy_pct,
                entry.n_subjects
            )?;
        }
    }
    Ok(())
}

/// Confusion-matrix CSV: header `truth` then one column per predicted
/// class; one row per truth class.
pub fn write_confusion_csv(matrix: &ConfusionMatrix, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    write_confusion_csv_to(matrix, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_confusion_csv_to(matrix: &ConfusionMatrix, w: &mut impl Write) -> Result<()> {
    write!(w, "truth")?;
    for class in matrix.classes() {
        write!(w, ",{class}")?;
    }
    writeln!(w)?;
    for (i, class) in matrix.classes().iter().enumerate() {
        write!(w, "{class}")?;
        for j in 0..matrix.classes().len() {
            write!(w, ",{}", matrix.count(i, j))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn accuracy_counts_matches() {
        let got = accuracy(&[1, 1, 2], &[1, 2, 2]).unwrap();
        assert!((got - 200.0 / 3.0).abs() < 1e-9);
        assert_eq!(accuracy(&[3, 4, 5], &[3, 4, 5]).unwrap(), 100.0);
    }

    #[test]
    fn accuracy_rejects_bad_input() {
        assert!(matches!(accuracy(&[1], &[1, 2]), Err(Error::Shape(_))));
        assert!(matches!(accuracy(&[], &[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn uniform_random_17_class_accuracy_is_near_chance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 10_000;
        let truth: Vec<u32> = (0..n).map(|_| rng.random_range(1..=17)).collect();
        let predicted: Vec<u32> = (0..n).map(|_| rng.random_range(1..=17)).collect();
        let acc = accuracy(&predicted, &truth).unwrap();
        assert!(
            (4.5..=7.5).contains(&acc),
            "chance-level accuracy {acc} outside [4.5, 7.5]"
        );
    }

    #[test]
    fn perfect_predictions_give_a_diagonal_matrix() {
        let labels = [1u32, 2, 3, 2, 1];
        let cm = confusion(&labels, &labels, &[1, 2, 3]).unwrap();
        assert_eq!(cm.trace(), 5);
        assert_eq!(cm.total(), 5);
        assert_eq!(cm.accuracy_pct(), 100.0);
    }

    #[test]
    fn swapped_predictions_fill_the_antidiagonal() {
        let cm = confusion(&[1, 2], &[2, 1], &[1, 2]).unwrap();
        assert_eq!(cm.count(0, 1), 1);
        assert_eq!(cm.count(1, 0), 1);
        assert_eq!(cm.trace(), 0);
    }

    #[test]
    fn three_class_counts_match_a_hand_tally() {
        let truth = [1u32, 1, 1, 2, 2, 3, 3, 3, 3];
        let predicted = [1u32, 2, 1, 2, 2, 3, 1, 3, 2];
        let cm = confusion(&predicted, &truth, &[1, 2, 3]).unwrap();
        assert_eq!(cm.count(0, 0), 2);
        assert_eq!(cm.count(0, 1), 1);
        assert_eq!(cm.count(1, 1), 2);
        assert_eq!(cm.count(2, 0), 1);
        assert_eq!(cm.count(2, 1), 1);
        assert_eq!(cm.count(2, 2), 2);
        assert_eq!(cm.total(), 9);
        let per_class = cm.per_class_accuracy();
        assert!((per_class[0].1 - 200.0 / 3.0).abs() < 1e-9);
        assert_eq!(per_class[1].1, 100.0);
        assert_eq!(per_class[2].1, 50.0);
    }

    #[test]
    fn unknown_label_is_an_error() {
        assert!(matches!(
            confusion(&[1, 9], &[1, 1], &[1, 2]),
            Err(Error::Label(_))
        ));
    }

    fn report(subject: u32, technique: &str, acc_pattern: &[u32]) -> EvalReport {
        // acc_pattern encodes predictions against an all-ones truth
        let truth = vec![1u32; acc_pattern.len()];
        EvalReport::new(subject, technique, "C1", "knn", acc_pattern, &truth, 10).unwrap()
    }

    #[test]
    fn report_accuracy_equals_confusion_trace() {
        let r = report(1, "PROPOSED", &[1, 1, 2, 1]);
        assert_eq!(r.accuracy_pct, 75.0);
        assert_eq!(
            r.accuracy_pct,
            100.0 * r.confusion.trace() as f64 / r.confusion.total() as f64
        );
        assert_eq!(r.n_test, 4);
    }

    #[test]
    fn groups_of_ten_mirror_the_summary_layout() {
        let reports: Vec<EvalReport> = (1..=40).map(|s| report(s, "PROPOSED", &[1, 1])).collect();
        let summary = group_average(&reports, 10).unwrap();
        assert_eq!(summary.entries.len(), 4);
        assert_eq!(summary.entries[0].first_subject, 1);
        assert_eq!(summary.entries[0].last_subject, 10);
        assert_eq!(summary.entries[3].first_subject, 31);
        assert_eq!(summary.entries[3].last_subject, 40);
    }

    #[test]
    fn remainder_group_is_kept() {
        let reports: Vec<EvalReport> = (1..=11).map(|s| report(s, "WA", &[1])).collect();
        let summary = group_average(&reports, 10).unwrap();
        assert_eq!(summary.entries.len(), 2);
        assert_eq!(summary.entries[1].n_subjects, 1);
    }

    #[test]
    fn group_mean_is_the_arithmetic_mean() {
        let a = report(1, "AG", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 2]); // 90%
        let b = report(2, "AG", &[1, 1, 1, 1, 1, 1, 1, 1, 2, 2]); // 80%
        let summary = group_average(&[a, b], 10).unwrap();
        assert_eq!(summary.entries.len(), 1);
        assert_eq!(summary.entries[0].rows.len(), 1);
        assert_eq!(summary.entries[0].rows[0].mean_accuracy_pct, 85.0);
    }
}
