//! Command-line harness for `rieszlab`: input parsing, seeded check
//! suites and exact JSON reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod oracle;
pub mod report;
pub mod suites;

pub use cli::Cli;
pub use config::RunConfig;
pub use error::CliError;
pub use report::{Check, Report};
pub use suites::{run_suite, SUITES};
