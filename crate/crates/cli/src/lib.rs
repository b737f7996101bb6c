//! Verification suites, reports and ad-hoc queries for the `fanoball` binary.

pub mod data;
pub mod query;
pub mod report;
pub mod suites;

pub use report::{CheckResult, Format, Provenance, Report};
pub use suites::{run_suite, Suite};
