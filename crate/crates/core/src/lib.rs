//! Surface-EMG movement classification pipeline.
//!
//! The crate covers the offline portion of a pattern-recognition
//! myoelectric control chain:
//!
//! ```text
//! recording (CSV or synthetic)
//!   -> windowing::segment        overlapped or adjacent analysis windows
//!   -> windowing::aggregate      optional mean of n consecutive windows
//!   -> features::build_matrix    time-domain features per channel (C1..C7)
//!   -> dataset::split_by_repetition
//!   -> classifiers::TrainedPipeline   knn | nb | dt | svm
//!   -> evaluation                accuracy, confusion, group summaries
//! ```
//!
//! Everything is deterministic for a fixed seed: synthetic data, window
//! labeling, training, and prediction do not depend on thread count or
//! run order.

pub mod classifiers;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod windowing;

pub use error::{Error, Result};
