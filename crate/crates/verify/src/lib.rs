//! Configuration, orchestration and reporting for the verification suites.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{parse_suites, AValues, ReportFormat, RunConfig, Suite, CACHE_DIR_ENV};
pub use report::{ClaimRecord, Tally, VerificationReport};
pub use runner::{derive_seed, run, run_with_log};
