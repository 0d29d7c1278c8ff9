//! Verification suites with deterministic JSON and CSV reports.

mod config;
mod report;
mod suites;

pub use config::{parse_levels, Format, RunConfig, Suite};
pub use report::{CheckResult, Discrepancy, Summary, SuiteReport, Verdict};
pub use suites::run_suite;
