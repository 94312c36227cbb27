//! Benchmark harness for `mmp-core`: generated or file-based instances,
//! algorithm comparisons, and CSV/JSON result tables.

pub mod bench;
pub mod error;
pub mod instance;
pub mod output;

pub use bench::{run_bench, run_bench_traced, BenchSpec, Experiment, RunRecord};
pub use error::{BenchError, Result};
pub use instance::{load_instance, InstanceDoc, ProblemKind, SCHEMA};
pub use output::{format_float, read_csv, read_json, write_csv, write_csv_to, write_json, write_json_to, ResultRow};
