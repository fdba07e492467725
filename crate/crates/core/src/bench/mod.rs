//! Benchmark harness and comparison methods.

pub mod classical;
pub mod harness;
pub mod instances;

pub use classical::classical_comparator;
pub use harness::{bench_run, BenchCell, BenchConfig, BenchReport, BenchRow, Instances, Method, Verdict};
