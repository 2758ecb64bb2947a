//! Brute-force oracle and the conformance harness.

pub mod checks;
pub mod oracle;
pub mod report;

pub use oracle::{brute_distribution, brute_distribution_with, oracle_series, DistributionSlice};
pub use report::{
    registry, run_check, run_suite, Aggregate, CheckResult, CheckSpec, ConformanceReport, Status,
    Suite,
};
