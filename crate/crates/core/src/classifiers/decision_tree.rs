//! CART-style decision tree with Gini impurity.
//!
//! Thresholds are midpoints between sorted adjacent distinct values.
//! Impurity ties break toward the lower feature index, then the lower
//! threshold, so training is fully deterministic.

use std::any::Any;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{Classifier, ClassifierKind, Hyperparams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Node {
    Leaf {
        label: u32,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTreeModel {
    classes: Vec<u32>,
    n_cols: usize,
    nodes: Vec<Node>,
}

struct TreeBuilder<'a> {
    train: &'a FeatureMatrix,
    classes: Vec<u32>,
    label_idx: Vec<usize>,
    max_depth: usize,
    min_samples_leaf: usize,
    nodes: Vec<Node>,
}

fn gini_from_counts(counts: &[usize], total: usize) -> f64 {
    let t = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            p * p
        })
        .sum::<f64>()
}

impl<'a> TreeBuilder<'a> {
    fn class_counts(&self, rows: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.classes.len()];
        for &i in rows {
            counts[self.label_idx[i]] += 1;
        }
        counts
    }

    fn majority_label(&self, counts: &[usize]) -> u32 {
        let mut best = 0usize;
        let mut best_count = 0usize;
        for (ci, &c) in counts.iter().enumerate() {
            if c > best_count {
                best = ci;
                best_count = c;
            }
        }
        self.classes[best]
    }

    /// The best (feature, threshold) by weighted Gini, or `None` when no
    /// candidate strictly improves on the node impurity.
    fn best_split(&self, rows: &[usize], counts: &[usize]) -> Option<(usize, f64)> {
        let n = rows.len();
        let parent = gini_from_counts(counts, n);
        let mut best: Option<(f64, usize, f64)> = None;
        let k = self.classes.len();
        for f in 0..self.train.n_cols() {
            let mut pairs: Vec<(f64, usize)> =
                rows.iter().map(|&i| (self.train.row(i)[f], i)).collect();
            pairs.sort_unstable_by(|a, b| a.partial_cmp(b).expect("features are finite"));
            let mut left_counts = vec![0usize; k];
            let mut left_n = 0usize;
            for pos in 0..n - 1 {
                left_counts[self.label_idx[pairs[pos].1]] += 1;
                left_n += 1;
                if pairs[pos].0 == pairs[pos + 1].0 {
                    continue;
                }
                let right_n = n - left_n;
                if left_n < self.min_samples_leaf || right_n < self.min_samples_leaf {
                    continue;
                }
                let mut right_counts = vec![0usize; k];
                for ci in 0..k {
                    right_counts[ci] = counts[ci] - left_counts[ci];
                }
                let weighted = (left_n as f64 * gini_from_counts(&left_counts, left_n)
                    + right_n as f64 * gini_from_counts(&right_counts, right_n))
                    / n as f64;
                if weighted >= parent {
                    continue;
                }
                let threshold = 0.5 * (pairs[pos].0 + pairs[pos + 1].0);
                // strict < keeps the earlier candidate on ties: features
                // ascend, thresholds ascend within a feature
                if best.is_none_or(|(w, _, _)| weighted < w) {
                    best = Some((weighted, f, threshold));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }

    fn build(&mut self, rows: Vec<usize>, depth: usize) -> usize {
        let counts = self.class_counts(&rows);
        let n_present = counts.iter().filter(|&&c| c > 0).count();
        if n_present <= 1 || depth >= self.max_depth || rows.len() < 2 * self.min_samples_leaf {
            let label = self.majority_label(&counts);
            self.nodes.push(Node::Leaf { label });
            return self.nodes.len() - 1;
        }
        let Some((feature, threshold)) = self.best_split(&rows, &counts) else {
            let label = self.majority_label(&counts);
            self.nodes.push(Node::Leaf { label });
            return self.nodes.len() - 1;
        };
        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
            .into_iter()
            .partition(|&i| self.train.row(i)[feature] <= threshold);
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { label: 0 }); // placeholder
        let left = self.build(left_rows, depth + 1);
        let right = self.build(right_rows, depth + 1);
        self.nodes[id] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        id
    }
}

impl DecisionTreeModel {
    pub fn fit(train: &FeatureMatrix, hyper: &Hyperparams) -> Result<Self> {
        if hyper.max_depth < 1 {
            return Err(Error::Hyperparameter("max depth must be at least 1".into()));
        }
        if hyper.min_samples_leaf < 1 {
            return Err(Error::Hyperparameter(
                "min samples per leaf must be at least 1".into(),
            ));
        }
        let classes = train.classes();
        let label_idx: Vec<usize> = train
            .labels()
            .iter()
            .map(|l| classes.binary_search(l).expect("label was collected"))
            .collect();
        let mut builder = TreeBuilder {
            train,
            classes: classes.clone(),
            label_idx,
            max_depth: hyper.max_depth,
            min_samples_leaf: hyper.min_samples_leaf,
            nodes: Vec::new(),
        };
        let root = builder.build((0..train.n_rows()).collect(), 0);
        debug_assert_eq!(root, 0);
        Ok(Self {
            classes,
            n_cols: train.n_cols(),
            nodes: builder.nodes,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn from_parts(classes: Vec<u32>, n_cols: usize, nodes: Vec<Node>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Shape("decision tree has no nodes".into()));
        }
        for node in &nodes {
            if let Node::Split {
                feature,
                left,
                right,
                ..
            } = node
            {
                if *feature >= n_cols || *left >= nodes.len() || *right >= nodes.len() {
                    return Err(Error::Shape("decision tree node out of range".into()));
                }
            }
        }
        Ok(Self {
            classes,
            n_cols,
            nodes,
        })
    }

    pub(crate) fn parts(&self) -> (&[u32], usize, &[Node]) {
        (&self.classes, self.n_cols, &self.nodes)
    }
}

impl Classifier for DecisionTreeModel {
    fn kind(&self) -> ClassifierKind {
        ClassifierKind::DecisionTree
    }

    fn classes(&self) -> &[u32] {
        &self.classes
    }

    fn feature_width(&self) -> usize {
        self.n_cols
    }

    fn predict_row(&self, row: &[f64]) -> u32 {
        let mut id = 0usize;
        loop {
            match self.nodes[id] {
                Node::Leaf { label } => return label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    id = if row[feature] <= threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}
