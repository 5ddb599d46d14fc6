//! Workload generation, timing and CSV output for comparing slick tables
//! against the standard library's hash map and B-tree map.

use std::path::PathBuf;

use thiserror::Error;

pub mod backend;
pub mod plan;
pub mod record;
pub mod runner;
pub mod workload;

pub use backend::{Backend, OrderedMap, SlickBackend, UnorderedMap};
pub use plan::{sweep_grid, Baseline, BenchPlan, Phase, DELETE_BATCH, DESK_SCALE, FULL_SCALE};
pub use record::{read_csv, write_csv, write_csv_to, BenchRecord, CSV_HEADER};
pub use runner::{run_grid, run_phase, run_plan, RunOutput};
pub use workload::gen_keys;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(#[from] slick_core::ConfigError),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("{impl_name}: {phase} phase needs a populated table; run insert first")]
    PhaseOrder {
        impl_name: &'static str,
        phase: Phase,
    },
    #[error("{impl_name} does not support the {phase} phase")]
    PhaseUnsupported {
        impl_name: &'static str,
        phase: Phase,
    },
    #[error("{impl_name}: {misses} inserted keys were not found")]
    Misses {
        impl_name: &'static str,
        misses: usize,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
}
