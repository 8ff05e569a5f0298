//! Experiment orchestration behind the `emgpr` binary: end-to-end runs,
//! the latency benchmark, preset listings and the flat config-file
//! format. The binary is a thin argument layer over this crate.

pub mod bench;
pub mod config_file;
pub mod experiment;
pub mod presets;

use thiserror::Error;

/// A pipeline-stage failure: which stage, and the underlying error.
#[derive(Debug, Error)]
#[error("stage {stage}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub source: emgpr_core::Error,
}

pub type RunResult<T> = std::result::Result<T, StageError>;

pub(crate) fn stage<T>(name: &'static str, result: emgpr_core::Result<T>) -> RunResult<T> {
    result.map_err(|source| StageError {
        stage: name,
        source,
    })
}

/// Process exit code for an error: 1 for validation problems, 2 for data
/// problems. Internal faults (panics) map to 3 in the binary.
pub fn exit_code(err: &emgpr_core::Error) -> i32 {
    use emgpr_core::Error::*;
    match err {
        InvalidSpec { .. } | Hyperparameter(_) => 1,
        Format { .. }
        | Parse { .. }
        | ChannelCount { .. }
        | InputTooShort { .. }
        | Shape(_)
        | WindowTooShort { .. }
        | NonFinite(_)
        | Feature { .. }
        | DegenerateData(_)
        | Label(_)
        | Split(_)
        | EmptyInput(_)
        | ModelFormat(_)
        | File { .. }
        | Io(_) => 2,
    }
}
