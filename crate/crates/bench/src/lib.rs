//! Benchmark harness: instance loading, solver registry, exact oracles for
//! small instances, suite runner and CSV reports.

pub mod error;
pub mod oracle;
pub mod report;
pub mod solve;
pub mod suite;
pub mod tune;

pub use error::{BenchError, Result};
pub use report::{fill_scaled_errors, read_reports, scaled_error, write_reports, RunReport, ScaledErrors};
pub use solve::{load_instance, map_by_name, run, Budget, GtspSearch, Named, Problem, Solution, Solver};
pub use suite::{run_suite, Suite, SuiteConfig};
